"""
File:           __init__.py
Created on:     13/10/26, 10:05 am
"""
from .tokenizer import Token, TokenType, ConstraintError, ConstraintSyntaxError, tokenize
from .parser import UnknownIdentifierError, parse, to_source, walk, parameter_names
from .hyperdual import HyperDual, ConstraintDomainError
from .constraint import ConstraintExpr, PartialDerivs, UnboundParameterError, \
    IndeterminateSymmetryError, parse_constraint, evaluate, evaluate_array, partials, is_symmetric
from .presets import UnknownPresetError, preset
