"""Deterministic ideal and module catalogs for extension-test sweeps.

The subalgebra A(1) is small enough to enumerate every homogeneous left
ideal outright (they are the graded submodules of the regular module);
beyond it, sweeps use a fixed structured catalog: ideals generated by
subsets of Sq(1), Sq(2), Sq(4), Sq(8), plus seeded random homogeneous
elements so runs stay reproducible under a single seed.
"""

from __future__ import annotations

import random
from itertools import product as iproduct
from typing import Optional

from . import milnor
from .annihilator import HomIdeal
from .f2 import Subspace
from .gmodule import (GradedModule, SuspensionProfile, Window, coproduct,
                      dual_regular, free_module, quotient, regular, submodule,
                      zero_module)
from .milnor import Algebra, Element


def _all_subspaces(n: int) -> list[Subspace]:
    """Every subspace of GF(2)^n (only called for tiny n)."""
    seen = {}
    vectors = list(range(1, 1 << n))
    for r in range(0, n + 1):
        from itertools import combinations
        for combo in combinations(vectors, r):
            sp = Subspace.from_vectors(list(combo), n)
            seen[(sp.basis.rows, n)] = sp
    return list(seen.values())


def all_a1_ideals() -> list[HomIdeal]:
    """Every homogeneous left ideal of A(1), as generator lists.

    Enumerates all degreewise subspace families of the regular module,
    keeps the action-invariant ones, and extracts minimal generators from
    the cokernel of the positive-degree action into the family.
    """
    alg = Algebra.subalgebra(1)
    W = Window(0, 6)
    R = regular(alg, W)
    per_degree = [_all_subspaces(R.dims[d]) for d in W]
    ideals: list[HomIdeal] = []
    for combo in iproduct(*per_degree):
        family = dict(zip(range(W.lo, W.hi + 1), combo))
        if not _invariant(R, family):
            continue
        gens = _family_generators(R, family)
        if gens is not None:
            ideals.append(HomIdeal(gens) if gens else None)
    return [i for i in ideals if i is not None]


def _invariant(m: GradedModule, family: dict[int, Subspace]) -> bool:
    for k in range(1, m.window.width + 1):
        for seq in m.algebra.basis(k):
            for d in m.window:
                if d + k not in m.window:
                    continue
                mat = m.action(seq, d)
                for v in family[d].basis.rows:
                    if not family[d + k].contains(mat.apply(v)):
                        return False
    return True


def _family_generators(m: GradedModule, family: dict[int, Subspace]
                       ) -> Optional[list[Element]]:
    """Minimal generators of an invariant family inside the regular module.

    Returns [] for the zero family (no ideal), a generator list otherwise.
    """
    gens: list[Element] = []
    alg = m.algebra
    for d in m.window:
        sp = family[d]
        if not sp.dim:
            continue
        image_rows = []
        for k in range(1, d - m.window.lo + 1):
            for seq in alg.basis(k):
                mat = m.action(seq, d - k)
                for v in family[d - k].basis.rows:
                    image_rows.append(mat.apply(v))
        image = Subspace.from_vectors(image_rows, m.dims[d])
        for v in sp.basis.rows:
            if not image.contains(v):
                gens.append(milnor.element_from_coords(v, d, alg))
                image = image.sum_with(Subspace.from_vectors([v], m.dims[d]))
    if not gens:
        return []
    return gens


def structured_ideal_catalog(algebra: Algebra, seed: int,
                             num_random: int = 3,
                             max_random_degree: int = 10) -> list[HomIdeal]:
    """Subsets of the generating squares plus seeded random elements."""
    squares = [Element.sq(1), Element.sq(2), Element.sq(4), Element.sq(8)]
    squares = [s for s in squares
               if algebra.is_full or algebra.contains(next(iter(s.terms)))]
    out: list[HomIdeal] = []
    n = len(squares)
    for mask in range(1, 1 << n):
        gens = [squares[i] for i in range(n) if (mask >> i) & 1]
        out.append(HomIdeal(gens))
    rng = random.Random(seed)
    made = 0
    while made < num_random:
        d = rng.randint(2, max_random_degree)
        basis = algebra.basis(d)
        if not basis:
            continue
        mask = rng.randrange(1, 1 << len(basis))
        elem = milnor.element_from_coords(mask, d, algebra)
        out.append(HomIdeal([Element.sq(1), elem]))
        made += 1
    return out


def a1_module_corpus(pad: int = 8) -> list[tuple[str, GradedModule]]:
    """Named small modules over A(1), free and non-free, on generous windows."""
    alg = Algebra.subalgebra(1)
    W = Window(-pad, 6 + pad)
    R = regular(alg, W)
    top_degree = 6

    def socle_family():
        return {top_degree: Subspace.full(1)}

    def ideal_family(*gens: Element):
        from .annihilator import ideal_span
        wi = ideal_span(HomIdeal(list(gens)), alg, W)
        return {d: wi.space(d) for d in W if d >= 0}

    corpus: list[tuple[str, GradedModule]] = [
        ("regular", R),
        ("zero", zero_module(alg, W)),
        ("free-0-0", free_module(SuspensionProfile([0, 0]), alg, W)),
        ("free-0-3", free_module(SuspensionProfile([0, 3]), alg, W)),
        ("suspension-2", regular(alg, Window(-pad, 6 + pad)).suspend(2)),
        ("dual-regular", dual_regular(alg, Window(-6 - pad, pad))),
        ("trivial", quotient(R, ideal_family(Element.sq(1), Element.sq(2)))),
        ("regular-mod-socle", quotient(R, socle_family())),
        ("regular-mod-sq1", quotient(R, ideal_family(Element.sq(1)))),
        ("regular-mod-sq2", quotient(R, ideal_family(Element.sq(2)))),
        ("regular-mod-q1", quotient(R, ideal_family(Element.sq(0, 1)))),
        ("ideal-sq1", submodule(R, ideal_family(Element.sq(1)))),
        ("ideal-sq2", submodule(R, ideal_family(Element.sq(2)))),
        ("trivial-pair", coproduct([
            (quotient(R, ideal_family(Element.sq(1), Element.sq(2))), 0),
            (quotient(R, ideal_family(Element.sq(1), Element.sq(2))), 3)])),
    ]
    return corpus
