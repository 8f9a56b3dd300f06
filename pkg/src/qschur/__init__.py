"""Exact computations in affine q-Schur algebras of the cyclic quiver.

The package is layered bottom-up:

* ``coeffring``: Laurent polynomials, rational functions of v, quantum numbers.
* ``periodic``: periodic matrices, the statistic d_A, the partial order.
* ``schur``: the generator action on the [A]-basis and the bilinear form.
* ``fqoracle``: brute-force lattice-chain counting over small finite fields.
* ``stab``: the p >> 0 stabilized action with coefficients in Q(v)[u].
* ``udot``: weights, monomials of the modified quantum group, the form on f.
* ``canon``: canonical basis elements by Gram-Schmidt on verified monomials.
* ``verify`` and ``cli``: acceptance suites and the command-line front end.
"""
from .coeffring import LaurentPoly, RationalFunc, UPoly
from .periodic import PeriodicMatrix, col_sums, d_stat, idem_matrix, row_sums, transpose
from .schur import AlgebraElem, E, F, Gen, K, apply_word, format_word, parse_word

__all__ = [
    "AlgebraElem",
    "E",
    "F",
    "Gen",
    "K",
    "LaurentPoly",
    "PeriodicMatrix",
    "RationalFunc",
    "UPoly",
    "apply_word",
    "col_sums",
    "d_stat",
    "format_word",
    "idem_matrix",
    "parse_word",
    "row_sums",
    "transpose",
]

__version__ = "0.1.0"
