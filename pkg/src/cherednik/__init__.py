"""Exact computations with rational Cherednik algebras of small reflection groups.

Modules: ``field`` (exact scalars), ``group`` (reflection groups and irreps),
``poly`` (divided differences and integral operators), ``clifford`` (spin
modules), ``modules`` (standard, integral-reflection and baby Verma modules),
``dirac`` (local Dirac operators, index and multiplicity matrices),
``global_dirac`` (global Dirac operator and the Dunkl-Opdam complex) and
``cli``.
"""

__version__ = "0.1.0"
