"""Computations with virtual Artin groups VA[Gamma]."""
from pathlib import Path

from .coxeter import (CoxeterGraph, WElement, classify, element_of_word, enumerate_W, gram_matrix,
                      length, longest_element, parse_graph, reduced_word, w_equal)
from .numfield import FieldContext, FieldElement, coxeter_value, make_context
from .presentations import (GammaHat, dimension_report, foi_analysis, gamma_hat, kva_presentation, n_sph,
                            pva_presentation, z_word)
from .roots import INF, Root, RootSystem, Undetermined, enumerate_roots, is_positive, mhat, reflection_of_root
from .virtual import (KernelWord, VAWord, expand_kernel, iota_A, iota_W, kernel_rewrite, parse_word, pi_K,
                      pi_P, w_action)
from .wordproblem import SolveOutcome, artin_solve, garside_normal_form, raag_normal_form, va_solve

SCHEMA_PATH = Path(__file__).with_name("schema") / "report.schema.json"

__all__ = [
    "CoxeterGraph", "FieldContext", "FieldElement", "GammaHat", "INF", "KernelWord", "Root", "RootSystem",
    "SCHEMA_PATH", "SolveOutcome", "Undetermined", "VAWord", "WElement", "artin_solve", "classify",
    "coxeter_value", "dimension_report", "element_of_word", "enumerate_W", "enumerate_roots",
    "expand_kernel", "foi_analysis", "gamma_hat", "garside_normal_form", "gram_matrix", "iota_A", "iota_W",
    "is_positive", "kernel_rewrite", "kva_presentation", "length", "longest_element", "make_context",
    "mhat", "n_sph", "parse_graph", "parse_word", "pi_K", "pi_P", "pva_presentation", "raag_normal_form",
    "reduced_word", "reflection_of_root", "va_solve", "w_action", "w_equal", "z_word",
]
