import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebsie.errors import ExprDomainError, ExprSyntaxError, UnboundNameError
from chebsie.kernel_expr import BinOp, Call, Name, Neg, Num, evaluate, free_names, parse, to_source
from chebsie.problem import CRACK_KERNEL_SOURCES, crack_kernels


def ev(src, **b):
    return evaluate(parse(src), b)


class TestParseAndEvaluate:
    def test_difference(self):
        assert ev("tau - t", t=0.5, tau=0.25) == -0.25

    def test_crack_term(self):
        assert ev("-(tau-t)/((tau-t)^2+4*h^2)", t=0.0, tau=1.0, h=0.5) == -0.5

    def test_rhs_with_pi_call(self):
        assert ev("2*pi()*t", t=1.0) == 2 * math.pi

    def test_syntax_error_offset(self):
        with pytest.raises(ExprSyntaxError) as err:
            parse("1 + * 2")
        assert err.value.offset == 4
        assert "number" in err.value.expected

    @pytest.mark.parametrize(
        "src, offset",
        [("2t", 1), ("(t", 2), ("t)", 1), ("", 0), ("sqrt()", 0), ("3 $ 4", 2), ("é + ", 0)],
    )
    def test_more_syntax_errors(self, src, offset):
        with pytest.raises(ExprSyntaxError) as err:
            parse(src)
        assert err.value.offset == offset

    def test_offsets_are_bytes(self):
        with pytest.raises(ExprSyntaxError) as err:
            parse("t + é")
        assert err.value.offset == 4
        with pytest.raises(ExprSyntaxError) as err:
            parse("(t) (")
        assert err.value.offset == 4

    def test_unknown_function(self):
        with pytest.raises(ExprSyntaxError, match="unknown function"):
            parse("tan(t)")

    def test_power_and_sqrt(self):
        assert ev("h^2", h=3) == 9
        assert ev("sqrt(1-t^2)", t=0.6) == pytest.approx(0.8, abs=1e-16)

    def test_domain_errors(self):
        with pytest.raises(ExprDomainError) as err:
            ev("log(t)", t=-1.0)
        assert err.value.function == "log" and err.value.value == -1.0
        with pytest.raises(ExprDomainError):
            ev("sqrt(t)", t=np.array([0.5, -0.1]))
        with pytest.raises(ExprDomainError):
            ev("t^0.5", t=-2.0)

    def test_unbound(self):
        with pytest.raises(UnboundNameError):
            ev("t + h", t=1.0)

    @pytest.mark.parametrize(
        "src, value",
        [("2+3*4", 14), ("2*3^2", 18), ("-2^2", -4), ("2^3^2", 512), ("8/4/2", 1), ("2-3-4", -5),
         ("2^-1", 0.5), ("--3", 3), ("abs(-2)*exp(0)+cos(0)+sin(0)", 3)],
    )
    def test_precedence_corpus(self, src, value):
        assert ev(src) == value

    def test_cube(self):
        assert ev("(tau-t)^3", t=0.5, tau=2.0) == 1.5**3

    def test_vectorized(self):
        t = np.linspace(-1, 1, 7)
        np.testing.assert_array_equal(ev("t*t + 1", t=t), t * t + 1)

    def test_free_names(self):
        assert free_names(parse("sqrt(tau - t) + h*pi()")) == {"t", "tau", "h"}


class TestCrackKernels:
    def test_match_closed_forms(self, rng):
        t = rng.uniform(-1, 1, 1000)
        tau = rng.uniform(-1, 1, 1000)
        h = rng.uniform(0.2, 10, 1000)
        for i in range(2):
            for j in range(2):
                expr = evaluate(parse(CRACK_KERNEL_SOURCES[i][j]), {"t": t, "tau": tau, "h": h})
                closed = np.array([crack_kernels(hk)[i][j](tk, sk) for tk, sk, hk in zip(t, tau, h)])
                assert np.max(np.abs(expr - closed) / np.maximum(1.0, np.abs(closed))) <= 1e-15


names = st.sampled_from(["t", "tau", "h"])
literals = st.one_of(
    st.integers(0, 1000).map(float),
    st.floats(0, 1e6, allow_nan=False, allow_infinity=False).map(abs),
)
leaves = st.one_of(literals.map(Num), names.map(Name))


def extend(children):
    return st.one_of(
        children.map(Neg),
        st.tuples(st.sampled_from("+-*/^"), children, children).map(lambda a: BinOp(*a)),
        st.tuples(st.sampled_from(["sqrt", "sin", "cos", "exp", "log", "abs"]), children).map(
            lambda a: Call(a[0], (a[1],))
        ),
    )


exprs = st.recursive(leaves, extend, max_leaves=12).filter(lambda e: _depth(e) <= 6)


def _depth(e):
    if isinstance(e, Neg):
        return 1 + _depth(e.operand)
    if isinstance(e, BinOp):
        return 1 + max(_depth(e.left), _depth(e.right))
    if isinstance(e, Call):
        return 1 + max((_depth(a) for a in e.args), default=0)
    return 0


def _eval_or_error(e, b):
    try:
        return evaluate(e, b)
    except ExprDomainError as exc:
        return ("domain", exc.function)


@settings(max_examples=300, deadline=None)
@given(exprs, st.integers(0, 2**32 - 1))
def test_print_parse_round_trip(e, seed):
    again = parse(to_source(e))
    assert again == e
    r = np.random.default_rng(seed)
    b = {"t": r.uniform(-1, 1, 10), "tau": r.uniform(-1, 1, 10), "h": r.uniform(0.1, 3, 10)}
    a1, a2 = _eval_or_error(e, b), _eval_or_error(again, b)
    if isinstance(a1, tuple):
        assert a1 == a2
    else:
        np.testing.assert_array_equal(a1, a2)
