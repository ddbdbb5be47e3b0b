"""Minimal graded free resolutions, syzygy modules, Betti numbers and Tor."""

from __future__ import annotations

import csv
import io
from collections import Counter

from .complexes import ChainComplex, homology, tensor_homology
from .groebner import Ideal, ideal_power
from .modules import FreeModule, ModuleMap, Subquotient, hilbert_window, module_intersection, syzygy_matrix


class Resolution:
    """``F_length -> ... -> F_1 -> F_0`` resolving ``resolved``."""

    def __init__(self, complex_: ChainComplex, resolved: Subquotient, length_computed: int, minimal: bool):
        self.complex = complex_
        self.resolved = resolved
        self.length_computed = length_computed
        self.minimal = minimal

    def __repr__(self):
        return f"Resolution(betti={self.betti_numbers()})"

    def free_module(self, i: int) -> FreeModule:
        return self.complex.module(i)

    def differential(self, i: int) -> ModuleMap:
        return self.complex.differential(i)

    def betti_numbers(self) -> list[int]:
        return self.complex.ranks()

    def graded_betti(self) -> dict[tuple[int, int], int]:
        """``{(i, degree): count}``."""
        out: Counter = Counter()
        for i, G in enumerate(self.complex.modules):
            for d in G.degrees:
                out[(i, d)] += 1
        return dict(out)

    def betti_table_csv(self) -> str:
        """Rows are ``degree - i`` (the usual Betti-table layout), columns are ``i``."""
        tab = self.graded_betti()
        n = self.complex.length
        rows = sorted({d - i for (i, d) in tab}) or [0]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row"] + [str(i) for i in range(n + 1)])
        for r in rows:
            w.writerow([str(r)] + [str(tab.get((i, r + i), 0)) for i in range(n + 1)])
        return buf.getvalue()

    def image(self, i: int) -> Subquotient:
        """``Im ∂_{i+1} ⊆ F_i``."""
        return Subquotient(self.free_module(i), self.differential(i + 1).columns)

    def is_minimal(self) -> bool:
        return not any(d.has_unit_entry() for d in self.complex.differentials)


def free_resolution(M: Subquotient, length: int, minimal: bool = True) -> Resolution:
    """Resolve ``M`` through ``F_length`` by iterated syzygies.

    Each step keeps a minimal generating set of the syzygy module (graded
    Nakayama), so the result is the minimal graded resolution.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    d1 = M.presentation(minimal=minimal)
    maps = [d1]
    while len(maps) < length:
        prev = maps[-1]
        if prev.source.rank == 0:
            nxt = ModuleMap.zero(FreeModule(M.ring, []), prev.source)
        else:
            nxt = syzygy_matrix(prev, minimal=minimal)
        maps.append(nxt)
    C = ChainComplex.from_maps(maps)
    return Resolution(C, M, length, minimal)


def default_length(M: Subquotient) -> int:
    return M.ring.dimension + 2


def syzygy_module(M: Subquotient, i: int, resolution: Resolution | None = None) -> Subquotient:
    """The ``i``-th syzygy ``Im ∂_{i+1} ⊆ F_i``; ``i = 0`` returns ``M``."""
    if i < 0:
        raise ValueError("syzygy index must be nonnegative")
    if i == 0:
        return M
    res = resolution if resolution is not None and resolution.length_computed >= i + 1 \
        else free_resolution(M, i + 1)
    return res.image(i)


def tor(i: int, I: Ideal, M: Subquotient, length: int | None = None) -> Subquotient:
    """``Tor_i(R/I, M)`` as ``H_i`` of (resolution of ``R/I``) ⊗ ``M``."""
    if i < 0:
        raise ValueError("Tor index must be nonnegative")
    res = free_resolution(Subquotient.cyclic(I), max(i + 1, length or 0))
    return tensor_homology(res.complex, M, i)


def tor_by_resolving_module(i: int, I: Ideal, M: Subquotient) -> Subquotient:
    """``Tor_i(R/I, M)`` computed from a resolution of ``M`` instead."""
    res = free_resolution(M, i + 1)
    return tensor_homology(res.complex, Subquotient.cyclic(I), i)


def ar_quotient(res: Resolution, I: Ideal, i: int, n: int) -> Subquotient:
    """``(I^n F_{i-1} ∩ Im ∂_i) / (I^n Im ∂_i)`` inside ``F_{i-1}``."""
    F = res.free_module(i - 1)
    In = ideal_power(I, n)
    image = Subquotient(F, res.differential(i).columns)
    left = module_intersection(F.full().times_ideal(In), image)
    return Subquotient(F, left.generators, image.times_ideal(In).generators)


def torUAR_crosscheck(M: Subquotient, I: Ideal, i: int, n: int, resolution: Resolution | None = None,
                      details: bool = False):
    """Compare ``(I^n F_{i-1} ∩ Im ∂_i)/(I^n Im ∂_i)`` with ``Tor_i(R/I^n, M)``.

    The comparison is equality of Hilbert series (exact numerators) and of the
    Hilbert function over a window covering both modules.
    """
    if i < 1 or n < 1:
        raise ValueError("need i >= 1 and n >= 1")
    res = resolution if resolution is not None and resolution.length_computed >= i else free_resolution(M, i)
    left = ar_quotient(res, I, i, n)
    right = tor(i, ideal_power(I, n), M)
    window = hilbert_window(left, right)
    hl = left.hilbert_function(window)
    hr = right.hilbert_function(window)
    same_series = _clean(left.hilbert_numerator()) == _clean(right.hilbert_numerator())
    ok = same_series and hl == hr
    if details:
        return ok, {"window": [window.start, window.stop - 1], "left": hl, "right": hr,
                    "left_length": left.length(), "right_length": right.length(),
                    "series_equal": same_series}
    return ok


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


def resolution_is_exact(res: Resolution) -> bool:
    """Direct homology vanishing for ``1 <= i < length``."""
    return all(homology(res.complex, i).is_zero() for i in range(1, res.length_computed))
