"""Recognizability and representability tools for morphisms of free monoids
and eventually periodic sequences of them."""

from .core import (EPP, Alphabet, AlphabetMismatch, FactorBag, Word, epp_equal,
                   epp_factors, epp_is_periodic, epp_normalize, epp_shift, primitive_root)
from .desub import (CenteredRepresentation, CheckResult, NonRecognizabilityCertificate,
                    RepFragment, Verdict, VerdictKind, audit_recognizability,
                    desubstitute_point, enumerate_fragments, lift_certificate,
                    verify_certificate)
from .elementary import (Decomposition, DecompositionNotFound, DescentChain, RankVerdict,
                         ResourceExhausted, build_descent_chain, find_decomposition,
                         is_elementary, rank_shortcut)
from .languages import (FactorSet, Membership, language_of_morphism, level_language, member,
                        saturate_levels)
from .morphisms import (Morphism, MorphismSequence, alphabet_rank, apply, apply_epp, compose,
                        constant_sequence, incidence_matrix, is_erasing, is_primitive_morphism,
                        is_primitive_sequence, productive_letters, rational_rank, telescope)
from .sadic import (AuditReport, RepKind, RepresentabilityVerdict, ShiftModel,
                    audit_sequence, check_representable_via_nonerasing,
                    decide_representability, model_membership, validate_model)

__version__ = "0.1.0"
