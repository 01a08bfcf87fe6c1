"""
File:           test_constraint_dsl.py
Created on:     17/10/26, 11:30 am
"""
import math

import numpy as np
import pytest

from src.constraint_dsl import TokenType, ConstraintError, ConstraintSyntaxError, \
    UnknownIdentifierError, ConstraintDomainError, UnboundParameterError, \
    IndeterminateSymmetryError, UnknownPresetError, HyperDual, tokenize, parse, to_source, \
    parameter_names, parse_constraint, evaluate, evaluate_array, partials, is_symmetric, preset
from src.constraint_dsl.parser import BinaryOp, UnaryOp, Number, Variable
from src.utils.settings import Tolerances


PRESET_CASES = [
    ("hot_norm", {}),
    ("cold_norm", {}),
    ("product", {}),
    ("sum", {}),
    ("inverse_sum", {}),
    ("alpha_linear", {"alpha": 0.3}),
    ("d_linear", {"d": 0.5}),
    ("s_linear", {"s": 0.9, "eta_c": 0.5}),
]


class TestTokenizer:

    def test_simple_product(self):
        tokens = tokenize("Ec*Eh")
        assert [token.type for token in tokens] == [TokenType.IDENT, TokenType.STAR,
                                                     TokenType.IDENT]
        assert [token.position for token in tokens] == [1, 3, 4]

    def test_inverse_sum(self):
        assert len(tokenize("1/Ec + 1/Eh")) == 7

    @pytest.mark.parametrize("text,value", [("1", 1.0), ("1.5", 1.5), (".5", 0.5),
                                            ("2e-3", 2e-3), ("1.E4", 1e4)])
    def test_numbers(self, text, value):
        (token, ) = tokenize(text)
        assert token.type == TokenType.NUMBER
        assert float(token.text) == value

    def test_dangling_operator_tokenizes(self):
        assert len(tokenize("Ec^")) == 2
        with pytest.raises(ConstraintSyntaxError):
            parse_constraint("Ec^")

    def test_illegal_character(self):
        with pytest.raises(ConstraintSyntaxError) as err:
            tokenize("Ec $ Eh")
        assert err.value.position == 4


class TestParser:

    def test_alpha_linear_source(self):
        c = parse_constraint("alpha*Ec + (1-alpha)*Eh")
        assert c.required_params == frozenset({"alpha"})
        assert c.unbound_params == frozenset({"alpha"})

    def test_d_linear_source(self):
        c = parse_constraint("Ec - (1-d)*Eh")
        assert parameter_names(c.ast) == frozenset({"d"})

    def test_syntax_error_position(self):
        with pytest.raises(ConstraintSyntaxError) as err:
            parse_constraint("2*+Eh")
        assert err.value.position == 3

    @pytest.mark.parametrize("text", ["", "   ", "(Ec", "Ec)", "Ec Eh", "sqrt Ec", "1/", "*Ec"])
    def test_malformed(self, text):
        with pytest.raises(ConstraintSyntaxError):
            parse_constraint(text)

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError) as err:
            parse_constraint("Ec*x")
        assert err.value.position == 4

    def test_declared_parameters(self):
        c = parse_constraint("k*Ec + Eh", params={"k": 2.0})
        assert evaluate(c, 1.0, 3.0) == pytest.approx(5.0)
        assert parse_constraint("k*Ec", declared=["k"]).unbound_params == frozenset({"k"})

    def test_unary_minus_binds_looser_than_power(self):
        ast = parse_constraint("-Ec^2").ast
        assert ast == UnaryOp("-", BinaryOp("^", Variable("Ec"), Number(2.0)))

    @pytest.mark.parametrize("text,expected", [
        ("2^3^2", 512.0),
        ("8/2/2", 2.0),
        ("2-3-4", -5.0),
        ("2+3*4", 14.0),
        ("(2+3)*4", 20.0),
        ("-2^2", -4.0),
        ("2^-1", 0.5),
        ("--3", 3.0),
    ])
    def test_precedence_and_associativity(self, text, expected):
        assert evaluate(parse_constraint(text), 1.0, 1.0) == pytest.approx(expected)

    @pytest.mark.parametrize("text", [
        "Ec*Eh", "1/Ec + 1/Eh", "alpha*Ec + (1-alpha)*Eh", "-Ec^2 + sqrt(Eh)",
        "exp(-Ec/Eh) - log(2*Eh) + inv(Ec)", "2^3^2", "1e-3*Ec", "(s/eta_c)*Ec + (1-s/eta_c)*Eh",
    ])
    def test_printed_source_parses_back(self, text):
        ast = parse_constraint(text).ast
        assert parse(tokenize(to_source(ast))) == ast

    def test_random_input_never_crashes(self, rng):
        alphabet = list("0123456789.eE+-*/^() ,$") + ["Ec", "Eh", "alpha", "sqrt", "log", "x"]
        for _ in range(2000):
            text = "".join(rng.choice(alphabet, size=int(rng.integers(0, 12))))
            try:
                c = parse_constraint(text)
            except ConstraintError:
                continue
            assert parse(tokenize(c.printed()), declared_params=c.required_params) == c.ast

    def test_deep_nesting(self):
        with pytest.raises(ConstraintSyntaxError):
            parse_constraint("(" * 5000 + "Ec" + ")" * 5000)


class TestEvaluate:

    @pytest.mark.parametrize("text,ec,eh,expected", [
        ("Ec*Eh", 2.0, 3.0, 6.0),
        ("1/Ec + 1/Eh", 2.0, 4.0, 0.75),
        ("Eh", 7.0, 5.0, 5.0),
        ("sqrt(Ec) + exp(0) + log(Eh) + inv(Ec)", 4.0, 1.0, 3.25),
    ])
    def test_values(self, text, ec, eh, expected):
        assert evaluate(parse_constraint(text), ec, eh) == pytest.approx(expected)

    @pytest.mark.parametrize("text,ec,eh", [
        ("log(Ec-Eh)", 1.0, 2.0),
        ("sqrt(Ec-Eh)", 1.0, 2.0),
        ("1/(Ec-Eh)", 1.0, 1.0),
        ("exp(Ec)", 1e3, 1.0),
        ("Eh", 0.0, 1.0),
        ("Eh", 1.0, -1.0),
    ])
    def test_domain_errors(self, text, ec, eh):
        with pytest.raises(ConstraintDomainError):
            evaluate(parse_constraint(text), ec, eh)

    def test_unbound_parameter(self):
        with pytest.raises(UnboundParameterError):
            evaluate(parse_constraint("alpha*Ec"), 1.0, 1.0)
        bound = parse_constraint("alpha*Ec").bind(alpha=2.0)
        assert evaluate(bound, 1.5, 1.0) == pytest.approx(3.0)

    def test_array_evaluation(self):
        c = parse_constraint("log(Ec - 1) + Eh")
        values = evaluate_array(c, np.array([2.0, 0.5, 3.0]), np.array([1.0, 1.0, 1.0]))
        assert values[0] == pytest.approx(1.0)
        assert math.isnan(values[1])
        assert values[2] == pytest.approx(math.log(2.0) + 1.0)

    def test_array_broadcasts_constants(self):
        values = evaluate_array(parse_constraint("2"), np.ones(4), np.ones(4))
        assert values.shape == (4, )
        assert values == pytest.approx(np.full(4, 2.0))


class TestPartials:

    def test_product(self):
        r = 1.7
        derivs = partials(preset("product"), r, r)
        assert (derivs.g00, derivs.g10, derivs.g01) == pytest.approx((r * r, r, r))
        assert (derivs.g20, derivs.g11, derivs.g02) == pytest.approx((0.0, 1.0, 0.0))

    def test_sum_has_no_curvature(self, rng):
        for ec, eh in rng.uniform(0.1, 5.0, size=(5, 2)):
            derivs = partials(preset("sum"), ec, eh)
            assert derivs.g11 == 0.0
            assert derivs.g20 == 0.0

    def test_inverse_sum(self):
        r = 2.5
        derivs = partials(preset("inverse_sum"), r, r)
        assert derivs.g10 == pytest.approx(-r ** -2)
        assert derivs.g20 == pytest.approx(2.0 * r ** -3)
        assert derivs.g11 == 0.0

    @pytest.mark.parametrize("name,params", PRESET_CASES + [
        ("custom", {"text": "Ec^Eh + sqrt(Ec*Eh) - exp(-Eh/Ec)"}),
        ("custom", {"text": "log(Ec + 2*Eh) * inv(Eh) + Ec^2.5"}),
    ])
    def test_match_finite_differences(self, rng, name, params):
        if name == "custom":
            c = parse_constraint(params["text"])
        else:
            c = preset(name, params)
        for ec, eh in rng.uniform(0.5, 5.0, size=(20, 2)):
            derivs = partials(c, ec, eh)
            hx, hy = 1e-5 * ec, 1e-5 * eh

            def first(x, y):
                d = partials(c, x, y)
                return np.array([d.g10, d.g01])

            g10 = (evaluate(c, ec + hx, eh) - evaluate(c, ec - hx, eh)) / (2 * hx)
            g01 = (evaluate(c, ec, eh + hy) - evaluate(c, ec, eh - hy)) / (2 * hy)
            d_dx = (first(ec + hx, eh) - first(ec - hx, eh)) / (2 * hx)
            d_dy = (first(ec, eh + hy) - first(ec, eh - hy)) / (2 * hy)
            assert derivs.g00 == pytest.approx(evaluate(c, ec, eh), rel=1e-14)
            assert derivs.g10 == pytest.approx(g10, rel=1e-6, abs=1e-9)
            assert derivs.g01 == pytest.approx(g01, rel=1e-6, abs=1e-9)
            assert derivs.g20 == pytest.approx(d_dx[0], rel=1e-6, abs=1e-9)
            assert derivs.g11 == pytest.approx(d_dx[1], rel=1e-6, abs=1e-9)
            assert derivs.g11 == pytest.approx(d_dy[0], rel=1e-6, abs=1e-9)
            assert derivs.g02 == pytest.approx(d_dy[1], rel=1e-6, abs=1e-9)

    def test_domain_error(self):
        with pytest.raises(ConstraintDomainError):
            partials(parse_constraint("sqrt(Ec - Eh)"), 1.0, 2.0)

    def test_hyperdual_product_rule(self):
        x, y = HyperDual.variable_x(3.0), HyperDual.variable_y(2.0)
        value = x * x * y
        assert (value.v, value.x, value.y) == (18.0, 12.0, 9.0)
        assert (value.xx, value.xy, value.yy) == (4.0, 6.0, 0.0)


class TestSymmetry:

    @pytest.mark.parametrize("text,expected", [
        ("Ec*Eh", True),
        ("Eh", False),
        ("1/Ec + 1/Eh", True),
        ("Ec + Eh", True),
        ("Ec - 0.5*Eh", False),
        ("sqrt(Ec^2 + Eh^2)", True),
    ])
    def test_examples(self, text, expected):
        assert is_symmetric(parse_constraint(text)) is expected

    def test_indeterminate(self):
        with pytest.raises(IndeterminateSymmetryError):
            is_symmetric(parse_constraint("log(Ec - Eh)"))

    def test_tolerance_overrides(self):
        nearly = parse_constraint("Ec + 1.0000001*Eh")
        assert not is_symmetric(nearly)
        assert is_symmetric(nearly, tolerances=Tolerances(symmetry_rel=1e-3))
        # the first unscrambled Halton point lies on the diagonal Ec = Eh
        assert is_symmetric(parse_constraint("Eh"), tolerances=Tolerances(symmetry_samples=1))
        assert not is_symmetric(parse_constraint("Eh"), sample_count=2)


class TestPresets:

    def test_sources(self):
        assert preset("product").source_text == "Ec*Eh"
        assert preset("alpha_linear", {"alpha": 0.5}).source_text == "0.5*Ec + 0.5*Eh"
        assert preset("s_linear", {"s": 0.9}).source_text == "(s/eta_c)*Ec + (1-s/eta_c)*Eh"
        assert preset("inverse_sum").source_text == "1/Ec + 1/Eh"

    def test_s_linear_leaves_eta_c_free(self):
        c = preset("s_linear", {"s": 0.9})
        assert c.unbound_params == frozenset({"eta_c"})
        assert evaluate(c.bind(eta_c=0.5), 1.0, 1.0) == pytest.approx(1.0)

    def test_unknown(self):
        with pytest.raises(UnknownPresetError):
            preset("bogus")

    @pytest.mark.parametrize("name", ["alpha_linear", "d_linear", "s_linear"])
    def test_missing_parameter(self, name):
        with pytest.raises(UnboundParameterError):
            preset(name)
