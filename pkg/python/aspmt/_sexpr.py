# SPDX-License-Identifier: BSD-2-Clause
# Copyright (c) deftio llc

"""Minimal SMT-LIB s-expression reader for solver responses."""

from __future__ import annotations

import re

SExpr = str | list["SExpr"]

_TOKEN = re.compile(r'\s*(?:(\()|(\))|\|([^|]*)\||("(?:[^"]|"")*")|([^\s()|";]+)|;[^\n]*)')


def tokenize(text: str) -> list[str | tuple[str]]:
    """Split text into ``(``, ``)`` and atoms; quoted symbols come back as 1-tuples."""
    tokens: list[str | tuple[str]] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            if text[pos:].strip():
                msg = f"unexpected character {text[pos]!r} at offset {pos}"
                raise ValueError(msg)
            break
        pos = match.end()
        opening, closing, quoted, string, atom = match.groups()
        if opening:
            tokens.append("(")
        elif closing:
            tokens.append(")")
        elif quoted is not None:
            tokens.append((quoted,))
        elif string is not None:
            tokens.append(string)
        elif atom is not None:
            tokens.append(atom)
    return tokens


def parse(text: str) -> list[SExpr]:
    """Parse every top-level s-expression; quoted symbols lose their bars.

    Raises:
        ValueError: On unbalanced parentheses or stray characters.

    """
    stack: list[list[SExpr]] = [[]]
    for token in tokenize(text):
        if token == "(":
            stack.append([])
        elif token == ")":
            if len(stack) == 1:
                msg = "unbalanced ')'"
                raise ValueError(msg)
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(token[0] if isinstance(token, tuple) else token)
    if len(stack) != 1:
        msg = "unbalanced '('"
        raise ValueError(msg)
    return stack[0]


def parse_value(expr: SExpr) -> int | bool:
    """Decode ``true``, ``false``, ``5`` and ``(- 5)``.

    Raises:
        ValueError: For anything else.

    """
    if expr == "true":
        return True
    if expr == "false":
        return False
    if isinstance(expr, str) and expr.isdigit():
        return int(expr)
    if isinstance(expr, list) and len(expr) == 2 and expr[0] == "-":  # noqa: PLR2004
        inner = parse_value(expr[1])
        if isinstance(inner, int) and not isinstance(inner, bool):
            return -inner
    msg = f"unsupported model value {expr!r}"
    raise ValueError(msg)


def parse_model(text: str) -> dict[str, int | bool]:
    """Constant definitions of a ``(get-model)`` response, with or without ``model``.

    Raises:
        ValueError: If the text is not a model.

    """
    exprs = parse(text)
    if len(exprs) != 1 or not isinstance(exprs[0], list):
        msg = "expected a single model s-expression"
        raise ValueError(msg)
    body = exprs[0]
    if body[:1] == ["model"]:
        body = body[1:]
    model: dict[str, int | bool] = {}
    for entry in body:
        if not (isinstance(entry, list) and entry[:1] == ["define-fun"]):
            msg = f"unexpected model entry {entry!r}"
            raise ValueError(msg)
        if len(entry) != 5 or entry[2] != []:  # noqa: PLR2004
            continue
        name = entry[1]
        if isinstance(name, str):
            model[name] = parse_value(entry[4])
    return model
