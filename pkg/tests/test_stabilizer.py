import numpy as np
import pytest

from strange_msd import gf3
from strange_msd.classical import ClassicalTernaryCode
from strange_msd.errors import (
    DegenerateShorteningError,
    DependentRowsError,
    EvenLengthError,
    NonCommutingRowsError,
    NotSelfOrthogonalError,
    ParseError,
    UnsupportedError,
)
from strange_msd.oracle import random_stabilizer_code
from strange_msd.stabilizer import (
    StabilizerCode,
    css_from_classical,
    dual_basis,
    format_stabilizer,
    logical_operators,
    parse_stabilizer,
    shorten,
    shorten_all,
    sl2_z3,
    validate,
)


def check_logical_pair(code, pair):
    x, z = pair.xbar.flat, pair.zbar.flat
    for op in (x, z):
        assert not gf3.symplectic_gram(np.vstack([code.h, op]))[-1].any()
        assert not gf3.in_row_span(op, code.h)
    assert gf3.symplectic_product(x, z) == 1


def test_css_rep3_validates(rep3):
    code = css_from_classical(rep3)
    validate(code)
    assert code.row_strings() == ["111|000", "000|111"]
    assert (code.r, code.k) == (2, 1)


def test_non_commuting_pair_reported():
    with pytest.raises(NonCommutingRowsError) as info:
        StabilizerCode.from_strings(["1|0", "0|1"])
    assert info.value.pair == (0, 1)


def test_duplicated_row():
    with pytest.raises(DependentRowsError):
        StabilizerCode.from_strings(["11|00", "11|00"])


def test_css_errors():
    with pytest.raises(NotSelfOrthogonalError):
        css_from_classical(ClassicalTernaryCode.from_rows([[1, 0, 0]]))
    with pytest.raises(EvenLengthError):
        css_from_classical(ClassicalTernaryCode.from_rows([[1, 1, 1, 0]]))


def test_css_golay(golay_dual):
    code = css_from_classical(golay_dual)
    validate(code)
    assert (code.n, code.r, code.k) == (11, 10, 1)
    assert code.is_css()


def test_dual_basis_rep3(rep3):
    code = css_from_classical(rep3)
    dual = dual_basis(code)
    assert dual.dim == 4
    assert not gf3.symplectic_gram(np.vstack([code.h, dual.rows]))[:2].any()
    assert gf3.in_row_span([1, 2, 0, 0, 0, 0], dual.rows)
    for row in code.h:
        assert gf3.in_row_span(row, dual.rows)


def test_dual_of_random_codes_contains_stabilizer():
    rng = np.random.default_rng(11)
    for n in (2, 3, 4, 5):
        code = random_stabilizer_code(n, rng)
        dual = dual_basis(code)
        assert dual.dim == n + code.k
        for row in code.h:
            assert gf3.in_row_span(row, dual.rows)


def test_logical_operators_rep3(rep3):
    code = css_from_classical(rep3)
    pair = logical_operators(code)
    check_logical_pair(code, pair)
    assert pair.xbar.u == (1, 2, 0) and pair.xbar.v == (0, 0, 0)
    # v-part is (1,2,0) up to the scaling that fixes the pairing
    assert pair.zbar.u == (0, 0, 0) and pair.zbar.v == (2, 1, 0)


def test_logical_operators_golay_and_deterministic(golay_dual):
    code = css_from_classical(golay_dual)
    first = logical_operators(code)
    check_logical_pair(code, first)
    assert logical_operators(css_from_classical(golay_dual)) == first


def test_logical_operators_need_k1():
    with pytest.raises(UnsupportedError):
        logical_operators(StabilizerCode.from_strings(["0|1"]))


def test_sl2_has_24_elements():
    rots = sl2_z3()
    assert len(rots) == 24
    assert len({r.tobytes() for r in rots}) == 24


def test_shorten_two_qutrit_state():
    state = StabilizerCode.from_strings(["12|00", "00|11"], id="bell")
    out = shorten(state, 2, 0)
    assert (out.n, out.r, out.k) == (1, 0, 1)


def test_shorten_product_state_is_degenerate():
    state = StabilizerCode.from_strings(["00|10", "00|01"])
    with pytest.raises(DegenerateShorteningError):
        shorten(state, 2, 0)


def test_shorten_all_outputs_are_valid():
    rng = np.random.default_rng(5)
    state = random_stabilizer_code(6, rng, r=6, id="s6")
    seen = 0
    for coord, rot, result in shorten_all(state):
        if isinstance(result, DegenerateShorteningError):
            continue
        seen += 1
        validate(result)
        assert (result.n, result.k) == (5, 1)
    assert seen > 0


def test_stabilizer_format_round_trip(golay_dual):
    code = css_from_classical(golay_dual)
    again = parse_stabilizer(format_stabilizer(code))
    assert again == code and again.id == code.id


def test_stabilizer_parse_errors():
    with pytest.raises(ParseError):
        parse_stabilizer("STABILIZER-CODE v1\np=3 n=2 r=1 id=x\n12-00\n")
    with pytest.raises(ParseError):
        parse_stabilizer("STABILIZER-CODE v1\np=5 n=1 r=1 id=x\n1|0\n")
