from steenmod.comodule import (ExtendedSpec, GradedComodule, extended, iota,
                               iota_injectivity_evidence,
                               iota_of_extended_reference, validate_coaction)
from steenmod.f2 import BitMatrix
from steenmod.gmodule import Window, dual_regular, freeness_test, validate
from steenmod.milnor import Algebra

FULL = Algebra.full()


def test_extended_unit_is_the_dual_algebra():
    w = Window(-10, 0)
    c = extended(ExtendedSpec({0: 1}), FULL, w)
    for d in w:
        assert c.dims[d] == FULL.dim(-d)
    assert validate_coaction(c) == []


def test_extended_zero():
    c = extended(ExtendedSpec({}), FULL, Window(-5, 0))
    assert c.total_dim() == 0
    assert validate_coaction(c) == []


def test_extended_dims_bookkeeping():
    w = Window(-10, 0)
    degs = [0, -1, -3]
    c = extended(ExtendedSpec({g: 1 for g in degs}), FULL, w)
    for d in w:
        assert c.dims[d] == sum(FULL.dim(g - d) for g in degs)


def test_counit_block_is_identity():
    c = extended(ExtendedSpec({0: 1}), FULL, Window(-6, 0))
    for d in c.window:
        assert c.coaction(d, 0) == BitMatrix.identity(c.dims[d])


def test_coaction_mutation_detected():
    w = Window(-8, 0)
    c = extended(ExtendedSpec({0: 1}), FULL, w)
    (d, k), mat = next(iter(sorted(c.coactions.items())))
    flipped = BitMatrix(mat.nrows, mat.ncols,
                        [mat.rows[0] ^ 1] + list(mat.rows[1:]))
    coactions = dict(c.coactions)
    coactions[(d, k)] = flipped
    mutant = GradedComodule(FULL, w, dict(c.dims), coactions,
                            c.bottom_exact, c.top_exact)
    assert validate_coaction(mutant) != []


def test_iota_of_unit_is_dual_regular():
    w = Window(-12, 0)
    m = iota(extended(ExtendedSpec({0: 1}), FULL, w))
    assert m == dual_regular(FULL, w)


def test_iota_zero():
    m = iota(extended(ExtendedSpec({}), FULL, Window(-5, 0)))
    assert m.is_zero()


def test_iota_preserves_dimensions_and_validates():
    w = Window(-14, 0)
    v = ExtendedSpec({0: 2, -3: 1})
    c = extended(v, FULL, w)
    m = iota(c)
    assert validate(m) == []
    for d in w:
        assert m.dims[d] == c.dims[d]


def test_iota_extended_is_coproduct_of_suspended_duals():
    w = Window(-14, 0)
    for dims in [{0: 1}, {0: 1, -1: 1, -3: 1}, {0: 2, -2: 1}]:
        v = ExtendedSpec(dims)
        assert iota(extended(v, FULL, w)) == iota_of_extended_reference(v, FULL, w)


def test_iota_exactness_of_sequences():
    """Degreewise exactness of a short exact sequence of comodules is
    preserved: dims of kernel and cokernel match under the embedding."""
    w = Window(-10, 0)
    a = extended(ExtendedSpec({-1: 1}), FULL, w)
    ab = extended(ExtendedSpec({-1: 1, 0: 1}), FULL, w)
    b = extended(ExtendedSpec({0: 1}), FULL, w)
    ma, mab, mb = iota(a), iota(ab), iota(b)
    for d in w:
        assert mab.dims[d] == ma.dims[d] + mb.dims[d]


def test_evidence_bounded_above():
    ev = iota_injectivity_evidence(ExtendedSpec({0: 1, -2: 1}), 1, Window(-20, 0))
    assert ev.verdict == "free"
    ev0 = iota_injectivity_evidence(ExtendedSpec({}), 1, Window(-10, 0))
    assert ev0.verdict == "free"


def test_evidence_unbounded_below_window():
    ev = iota_injectivity_evidence(
        ExtendedSpec({-7 * k: 1 for k in range(4)}), 1, Window(-30, 0))
    assert ev.verdict == "witness_failure"
    assert ev.witness_fails


def test_direct_freeness_of_iota_over_a1():
    w = Window(-20, 0)
    m = iota(extended(ExtendedSpec({0: 1, -2: 1}), FULL, w))
    verdict = freeness_test(m, Algebra.subalgebra(1))
    assert verdict.is_free
    assert all(g <= 0 for g in verdict.generator_degrees)
