"""Handle-presentation calculus for balanced presentations and their dual relators."""
from .corkcalc import (CommutatorDecomposition, MulticorkModel, NormalClosureCertificate, PinwheelModel,
                       VerificationError, encase, homological_pairing, mu, pinwheel, pinwheel_twist,
                       verify_certificate, verify_decomposition)
from .invariants import (BudgetExceeded, FiniteGroup, abelianization_matrix, count_homomorphisms,
                         default_groups, h1_signature, smith_normal_form)
from .moves import MoveKind, MoveToken, apply_move, fold, inverse_of, invert_script
from .presentation import (BiPresentation, HandlePair, MoveError, Presentation, SlidePath, double_slide,
                           general_slide, is_ac_structure, single_slide, standard_trivial)
from .search import (CanonicalForm, SearchBudget, SearchResult, canonical_form, certificate_search, scramble,
                     trivialization_search)
from .textformat import Document, ParseError, dumps, parse
from .words import Alphabet, Word, WordError

__all__ = [name for name in dir() if not name.startswith("_")]
