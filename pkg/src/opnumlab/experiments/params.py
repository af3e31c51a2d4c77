"""Parsing of ``--param key=value`` overrides.

Values are read as YAML scalars or lists; strings that look like arithmetic
over numbers and the constants ``e`` and ``pi`` (for instance ``(1/e,1/e)``)
are evaluated through a restricted expression walker.
"""

from __future__ import annotations

import ast
import math
import operator
from typing import Any, Dict, Iterable, Mapping, Tuple

try:
    import yaml
    YAML_AVAILABLE = True
except ImportError:
    YAML_AVAILABLE = False

from ..errors import ConfigError

CONSTANTS = {"e": math.e, "pi": math.pi}

_BINARY = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def _evaluate(node: ast.AST) -> Any:
    if isinstance(node, ast.Expression):
        return _evaluate(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.Name) and node.id in CONSTANTS:
        return CONSTANTS[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
        return _BINARY[type(node.op)](_evaluate(node.left), _evaluate(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_evaluate(node.operand))
    if isinstance(node, (ast.Tuple, ast.List)):
        return [_evaluate(item) for item in node.elts]
    raise ValueError(f"Unsupported expression element {type(node).__name__}")


def parse_expression(text: str) -> Any:
    """Evaluate an arithmetic expression over numbers, ``e`` and ``pi``."""
    try:
        return _evaluate(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"Cannot evaluate parameter expression {text!r}: {exc}") from exc


def _normalize(value: Any) -> Any:
    if isinstance(value, str):
        text = value.strip()
        if any(ch.isdigit() for ch in text) or any(name in text for name in CONSTANTS):
            try:
                return parse_expression(text)
            except ConfigError:
                return value
        return value
    if isinstance(value, (list, tuple)):
        return [_normalize(item) for item in value]
    return value


def parse_value(raw: str) -> Any:
    """Parse one parameter value."""
    if YAML_AVAILABLE:
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError:
            value = raw
    else:
        value = raw
    return _normalize(value)


def parse_param(item: str) -> Tuple[str, Any]:
    """Split ``key=value`` and parse the value."""
    key, sep, raw = item.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigError(f"Parameter {item!r} must look like key=value")
    return key, parse_value(raw)


def parse_params(items: Iterable[str]) -> Dict[str, Any]:
    return dict(parse_param(item) for item in items)


def merge_params(defaults: Mapping[str, Any], overrides: Mapping[str, Any], experiment: str) -> Dict[str, Any]:
    """Apply overrides to the defaults of an experiment; unknown keys are rejected."""
    unknown = sorted(set(overrides) - set(defaults))
    if unknown:
        raise ConfigError(
            f"Unknown parameters for {experiment}: {', '.join(unknown)}",
            known=sorted(defaults),
        )
    merged = dict(defaults)
    merged.update(overrides)
    return merged
