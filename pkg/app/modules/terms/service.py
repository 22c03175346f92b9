"""
Operations on terms: one-way matching, environment application and
evaluation to values.
"""
from typing import Iterator, Optional

from app.constants.common import INT_MAX, INT_MIN
from app.constants.error_codes import ErrorCode
from app.core.exceptions import EvalError
from app.modules.terms.models import (
    ArithOp,
    Atom,
    BinOp,
    Env,
    Int,
    Pid,
    Term,
    Tuple,
    Var,
)


def iter_variables(term: Term) -> Iterator[str]:
    """Yield variable names in left-to-right order, repeats included."""
    if isinstance(term, Var):
        yield term.name
    elif isinstance(term, Tuple):
        for element in term.elements:
            yield from iter_variables(element)
    elif isinstance(term, BinOp):
        yield from iter_variables(term.left)
        yield from iter_variables(term.right)


def variables(term: Term) -> frozenset[str]:
    return frozenset(iter_variables(term))


def repeated_variables(pattern: Term) -> list[str]:
    """Variable names occurring more than once, in first-repeat order."""
    seen: set[str] = set()
    repeated: list[str] = []
    for name in iter_variables(pattern):
        if name in seen and name not in repeated:
            repeated.append(name)
        seen.add(name)
    return repeated


def has_arithmetic(term: Term) -> bool:
    if isinstance(term, BinOp):
        return True
    if isinstance(term, Tuple):
        return any(has_arithmetic(e) for e in term.elements)
    return False


def is_value(term: Term) -> bool:
    """Closed and arithmetic-free."""
    if isinstance(term, (Var, BinOp)):
        return False
    if isinstance(term, Tuple):
        return all(is_value(e) for e in term.elements)
    return True


def is_pattern(term: Term) -> bool:
    return not has_arithmetic(term)


def is_linear(pattern: Term) -> bool:
    return not repeated_variables(pattern)


def match(value: Term, pattern: Term) -> Optional[Env]:
    """
    One-way match of a value against a linear pattern.

    Returns the environment binding exactly the pattern's variables, or
    None when the match fails. Never raises.
    """
    bindings: dict[str, Term] = {}
    if _match_into(value, pattern, bindings):
        return Env(tuple(bindings.items()))
    return None


def _match_into(value: Term, pattern: Term, out: dict[str, Term]) -> bool:
    if isinstance(pattern, Var):
        out[pattern.name] = value
        return True
    if isinstance(pattern, Tuple):
        if not isinstance(value, Tuple) or len(value.elements) != len(pattern.elements):
            return False
        return all(_match_into(v, p, out) for v, p in zip(value.elements, pattern.elements))
    if isinstance(pattern, BinOp):
        return False
    return pattern == value


def substitute(env: Env, term: Term) -> Term:
    """Replace every variable bound in `env`; unbound variables stay."""
    if not env:
        return term
    return _substitute(env, term)


def _substitute(env: Env, term: Term) -> Term:
    if isinstance(term, Var):
        bound = env.get(term.name)
        return term if bound is None else bound
    if isinstance(term, Tuple):
        return Tuple(tuple(_substitute(env, e) for e in term.elements))
    if isinstance(term, BinOp):
        return BinOp(term.op, _substitute(env, term.left), _substitute(env, term.right))
    return term


def merge(base: Env, update: Env) -> Env:
    """Right-biased merge of two environments."""
    return base.merge(update)


def evaluate(term: Term, allow_open: bool = False) -> Term:
    """
    Reduce arithmetic innermost-first.

    Args:
        term: Term to evaluate
        allow_open: Keep unbound variables, and arithmetic over them, as
            residual terms instead of failing

    Returns:
        The value of `term` (a residual term when `allow_open` is set)

    Raises:
        EvalError: open term (strict mode), non-integer operand, or a result
            outside the 64-bit signed range
    """
    if isinstance(term, (Atom, Int, Pid)):
        return term
    if isinstance(term, Var):
        if allow_open:
            return term
        raise EvalError(
            ErrorCode.EVAL_OPEN_TERM,
            f"variable {term.name} is unbound",
            term=str(term)
        )
    if isinstance(term, Tuple):
        return Tuple(tuple(evaluate(e, allow_open) for e in term.elements))

    left = evaluate(term.left, allow_open)
    right = evaluate(term.right, allow_open)
    if isinstance(left, Int) and isinstance(right, Int):
        return Int(_apply(term.op, left.value, right.value, term))
    if allow_open and _is_residual(left) and _is_residual(right):
        return BinOp(term.op, left, right)
    raise EvalError(
        ErrorCode.EVAL_NOT_INTEGER,
        f"arithmetic needs integer operands: {term}",
        term=str(term)
    )


def _is_residual(term: Term) -> bool:
    return isinstance(term, (Int, Var, BinOp))


def _apply(op: ArithOp, a: int, b: int, term: BinOp) -> int:
    if op is ArithOp.ADD:
        result = a + b
    elif op is ArithOp.SUB:
        result = a - b
    else:
        result = a * b
    if not INT_MIN <= result <= INT_MAX:
        raise EvalError(
            ErrorCode.EVAL_OVERFLOW,
            f"integer overflow evaluating {term}",
            term=str(term)
        )
    return result
