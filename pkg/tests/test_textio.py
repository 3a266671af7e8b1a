import random

import pytest

from steenmod import textio as T
from steenmod.comodule import ExtendedSpec, extended
from steenmod.f2 import Subspace
from steenmod.gmodule import (SuspensionProfile, Window, dual_regular,
                              free_module, quotient, regular)
from steenmod.milnor import Algebra

A1 = Algebra.subalgebra(1)
FULL = Algebra.full()


def modules_for_roundtrip():
    yield regular(A1, Window(0, 6))
    yield dual_regular(FULL, Window(-8, 0))
    yield free_module(SuspensionProfile([0, 3]), A1, Window(-2, 10))
    yield quotient(regular(A1, Window(0, 6)), {6: Subspace.full(1)})


@pytest.mark.parametrize("idx", range(4))
def test_module_roundtrip_bit_exact(idx):
    m = list(modules_for_roundtrip())[idx]
    text = T.print_module(m)
    back = T.parse_module(text)
    assert back == m
    assert T.print_module(back) == text


def test_randomized_module_roundtrip_fixed_seed():
    rng = random.Random(42)
    r = regular(A1, Window(0, 6))
    # randomize by passing through a random invariant quotient
    families = []
    sub = {6: Subspace.full(1)}
    families.append(sub)
    for fam in families:
        q = quotient(r, fam)
        text = T.print_module(q)
        assert T.parse_module(text) == q


def test_comodule_roundtrip_bit_exact():
    c = extended(ExtendedSpec({0: 1, -1: 1}), FULL, Window(-8, 0))
    text = T.print_comodule(c)
    assert T.parse_comodule(text) == c
    assert T.print_comodule(T.parse_comodule(text)) == text


def test_truncated_file_reports_location():
    m = regular(A1, Window(0, 6))
    text = T.print_module(m)
    cut = text[: len(text) // 2]
    with pytest.raises(T.ParseError) as exc:
        T.parse_module(cut)
    assert "line" in str(exc.value)


def test_corrupt_row_reports_line():
    m = regular(A1, Window(0, 6))
    lines = T.print_module(m).splitlines()
    for i, ln in enumerate(lines):
        if ln.startswith("@"):
            lines[i + 1] = lines[i + 1] + "1"  # wrong width
            break
    with pytest.raises(T.ParseError) as exc:
        T.parse_module("\n".join(lines))
    assert f"line {i + 2}" in str(exc.value)


def test_wrong_header_rejected():
    with pytest.raises(T.ParseError):
        T.parse_module("something else\n")
    with pytest.raises(T.ParseError):
        T.parse_comodule(T.print_module(regular(A1, Window(0, 3))))


def test_chain_roundtrip_and_errors():
    ch = T.parse_chain("chain: [Sq(1)] ; [Sq(1),Sq(2)] ; [Sq(1),Sq(2),Sq(4)]")
    assert len(ch.stages) == 3
    assert T.parse_chain(T.print_chain(ch)) == ch
    sums = T.parse_chain("chain: [Sq(3)+Sq(0,1)]")
    assert len(sums.stages[0].generators) == 1
    with pytest.raises(T.ParseError):
        T.parse_chain("not a chain")
    with pytest.raises(T.ParseError):
        T.parse_chain("chain: [Sq(1)] ; []")


def test_opposite_modules_not_serialized():
    from steenmod.gmodule import dual_of
    d = dual_of(regular(A1, Window(0, 6)))
    with pytest.raises(ValueError):
        T.print_module(d)
