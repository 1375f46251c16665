"""Module that exports client facing objects."""
from partialprob.dmf import (
    DmfAlgebra,
    DmfMorphism,
    PiAlgebra,
    enumerate_prime_ideals,
    interval_dmf,
    kleene_algebra,
    phi_I,
    pi_construction,
    separation_pair,
    validate_dmf,
)
from partialprob.formula import Formula, parse
from partialprob.kleene import (
    consequence,
    eval_kleene,
    kleene_lindenbaum_algebra,
    meaning,
)
from partialprob.lattice import (
    FiniteLattice,
    LatticeMorphism,
    Valuation,
    boolean_negation_in_interval,
    validate_lattice,
)
from partialprob.partial_set import (
    PartialField,
    PartialMeasure,
    PartialSet,
    SampleSpace,
    TValue,
    associated_partial_space,
    enumerate_DS,
)
from partialprob.partial_valuation import (
    conditional_partial_valuation,
    decompose,
    posneg_conditional_identity,
    weak_bayes,
)
from partialprob.sentences import AuditProbability, SentenceProbability, WorldWeights
from partialprob.translate import (
    TranslationCertificate,
    classical_sentences_to_space,
    classical_space_to_sentences,
    partial_sentences_to_space,
    partial_space_to_sentences,
)
