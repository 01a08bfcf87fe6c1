"""
File:           constraint.py
Created on:     13/10/26, 12:10 pm
"""
from typing import Callable, FrozenSet, Iterable, Mapping, Optional
from dataclasses import dataclass, field
import operator

import numpy as np
from scipy.stats import qmc

from src.constraint_dsl.tokenizer import tokenize, ConstraintError, ConstraintSyntaxError
from src.constraint_dsl.parser import Node, Number, Variable, Parameter, UnaryOp, BinaryOp, \
    Call, parse, to_source, parameter_names
from src.constraint_dsl import hyperdual
from src.constraint_dsl.hyperdual import HyperDual, ConstraintDomainError
from src.utils.settings import Tolerances, DEFAULT_TOLERANCES
from src.utils.logger import LogFacade


logger: LogFacade = LogFacade.get_logger("constraint_dsl")


class UnboundParameterError(ConstraintError):
    pass


class IndeterminateSymmetryError(ConstraintError):
    pass


NUMPY_FUNCTIONS = {
    "sqrt": np.sqrt,
    "log": np.log,
    "exp": np.exp,
    "inv": lambda value: 1.0 / value,
}
BINARY_OPERATORS = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
    "^": np.power,
}
HYPERDUAL_OPERATORS = dict(BINARY_OPERATORS, **{"^": operator.pow})

Compiled = Callable[[object, object, Mapping[str, float]], object]


def _compile(node: Node) -> Compiled:
    """ Closure tree over floats or numpy arrays """
    if isinstance(node, Number):
        value = node.value
        return lambda ec, eh, params: value
    if isinstance(node, Variable):
        if node.name == "Ec":
            return lambda ec, eh, params: ec
        return lambda ec, eh, params: eh
    if isinstance(node, Parameter):
        name = node.name
        return lambda ec, eh, params: params[name]
    if isinstance(node, UnaryOp):
        operand = _compile(node.operand)
        return lambda ec, eh, params: -operand(ec, eh, params)
    if isinstance(node, BinaryOp):
        left, right = _compile(node.left), _compile(node.right)
        func = BINARY_OPERATORS[node.op]
        return lambda ec, eh, params: func(left(ec, eh, params), right(ec, eh, params))
    if isinstance(node, Call):
        arg = _compile(node.arg)
        func = NUMPY_FUNCTIONS[node.func]
        return lambda ec, eh, params: func(arg(ec, eh, params))
    raise ConstraintError(f"Unknown node {node!r}")


def _evaluate_hyperdual(node: Node, ec: HyperDual, eh: HyperDual, params: Mapping[str, float]):
    if isinstance(node, Number):
        return HyperDual.constant(node.value)
    if isinstance(node, Variable):
        return ec if node.name == "Ec" else eh
    if isinstance(node, Parameter):
        return HyperDual.constant(params[node.name])
    if isinstance(node, UnaryOp):
        return -_evaluate_hyperdual(node.operand, ec, eh, params)
    if isinstance(node, BinaryOp):
        left = _evaluate_hyperdual(node.left, ec, eh, params)
        right = _evaluate_hyperdual(node.right, ec, eh, params)
        return HYPERDUAL_OPERATORS[node.op](left, right)
    if isinstance(node, Call):
        return hyperdual.FUNCTIONS[node.func](_evaluate_hyperdual(node.arg, ec, eh, params))
    raise ConstraintError(f"Unknown node {node!r}")


@dataclass(frozen=True)
class ConstraintExpr:
    """ Parsed constraint G(Ec, Eh) with its bound parameter values """
    ast: Node
    source_text: str
    params: Mapping[str, float] = field(default_factory=dict)
    _fn: Compiled = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "params", dict(self.params))
        object.__setattr__(self, "_fn", _compile(self.ast))

    def __str__(self):
        return self.source_text

    @property
    def required_params(self) -> FrozenSet[str]:
        return parameter_names(self.ast)

    @property
    def unbound_params(self) -> FrozenSet[str]:
        return frozenset(name for name in self.required_params if name not in self.params)

    def references(self, name: str) -> bool:
        return name in self.required_params

    def bind(self, **values: float) -> "ConstraintExpr":
        """ Copy with extra or replaced parameter values """
        params = dict(self.params)
        params.update({key: float(value) for key, value in values.items()})
        return ConstraintExpr(ast=self.ast, source_text=self.source_text, params=params)

    def check_bound(self) -> None:
        missing = self.unbound_params
        if missing:
            raise UnboundParameterError(
                f"Constraint '{self.source_text}' has unbound parameter(s): "
                f"{', '.join(sorted(missing))}"
            )

    def printed(self) -> str:
        return to_source(self.ast)


@dataclass(frozen=True)
class PartialDerivs:
    """ G and its partials; first index counts derivatives in Ec, second in Eh """
    g00: float
    g10: float
    g01: float
    g20: float
    g11: float
    g02: float


def parse_constraint(
        text: str,
        params: Optional[Mapping[str, float]] = None,
        declared: Iterable[str] = ()
) -> ConstraintExpr:
    """ tokenize + parse. Names in params are declared automatically """
    params = dict(params or {})
    try:
        tokens = tokenize(text)
        ast = parse(tokens, declared_params=set(declared) | set(params), text_length=len(text))
    except RecursionError as err:
        raise ConstraintSyntaxError("Expression nested too deeply", 1) from err
    return ConstraintExpr(ast=ast, source_text=text.strip(), params=params)


def evaluate(c: ConstraintExpr, ec: float, eh: float) -> float:
    """ G(ec, eh) with domain problems (log/sqrt of negatives, division by zero) raised """
    c.check_bound()
    if not (ec > 0 and eh > 0):
        raise ConstraintDomainError(f"Norms must be positive, got Ec={ec}, Eh={eh}")
    with np.errstate(all="raise"):
        try:
            value = c._fn(np.float64(ec), np.float64(eh), c.params)
        except (FloatingPointError, ZeroDivisionError, OverflowError) as err:
            raise ConstraintDomainError(
                f"'{c.source_text}' undefined at Ec={ec}, Eh={eh}: {err}"
            ) from err
    value = float(value)
    if not np.isfinite(value):
        raise ConstraintDomainError(f"'{c.source_text}' is not finite at Ec={ec}, Eh={eh}")
    return value


def evaluate_array(c: ConstraintExpr, ec: np.ndarray, eh: np.ndarray) -> np.ndarray:
    """ Vectorised G; entries where G is undefined come back as nan """
    c.check_bound()
    ec = np.asarray(ec, dtype=float)
    eh = np.asarray(eh, dtype=float)
    with np.errstate(all="ignore"):
        values = np.broadcast_to(np.asarray(c._fn(ec, eh, c.params), dtype=float),
                                 np.broadcast(ec, eh).shape)
    return np.where(np.isfinite(values), values, np.nan)


def partials(c: ConstraintExpr, ec: float, eh: float) -> PartialDerivs:
    """ Exact first and second partials from one hyper-dual evaluation """
    c.check_bound()
    try:
        result = hyperdual.lift(_evaluate_hyperdual(
            c.ast, HyperDual.variable_x(ec), HyperDual.variable_y(eh), c.params
        ))
    except ZeroDivisionError as err:
        raise ConstraintDomainError(f"'{c.source_text}' undefined at Ec={ec}, Eh={eh}") from err
    derivs = PartialDerivs(
        g00=result.v, g10=result.x, g01=result.y, g20=result.xx, g11=result.xy, g02=result.yy
    )
    if not all(np.isfinite(value) for value in (derivs.g00, derivs.g10, derivs.g01, derivs.g20,
                                                 derivs.g11, derivs.g02)):
        raise ConstraintDomainError(
            f"'{c.source_text}' has non-finite derivatives at Ec={ec}, Eh={eh}"
        )
    return derivs


def symmetry_samples(sample_count: int, low: float = 0.1, high: float = 10.0) -> np.ndarray:
    """ Deterministic Halton points in [low, high]^2 """
    sampler = qmc.Halton(d=2, scramble=False)
    return qmc.scale(sampler.random(sample_count), [low, low], [high, high])


def is_symmetric(
        c: ConstraintExpr,
        sample_count: Optional[int] = None,
        rel_tol: Optional[float] = None,
        tolerances: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """ Numerical test of G(x, y) == G(y, x) on a low-discrepancy sample. sample_count and rel_tol
    default to symmetry_samples and symmetry_rel of tolerances """
    sample_count = tolerances.symmetry_samples if sample_count is None else sample_count
    rel_tol = tolerances.symmetry_rel if rel_tol is None else rel_tol
    checked = 0
    skipped = 0
    for x, y in symmetry_samples(sample_count):
        try:
            g_xy = evaluate(c, x, y)
            g_yx = evaluate(c, y, x)
        except ConstraintDomainError:
            skipped += 1
            continue
        checked += 1
        if abs(g_xy - g_yx) > rel_tol * (1.0 + abs(g_xy)):
            return False
    if skipped:
        logger.warning(f"Symmetry test of '{c.source_text}' skipped {skipped} sample(s)")
    if checked == 0:
        raise IndeterminateSymmetryError(
            f"Symmetry of '{c.source_text}' is indeterminate, every sample is outside its domain"
        )
    return True
