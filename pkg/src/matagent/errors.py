"""Common error base carrying a machine code and a human hint.

Every module raises subclasses of MatagentError so the gateway can map
failures onto its uniform {code, message, hint} envelope without string
matching.
"""

from __future__ import annotations

import re


def _snake(name: str) -> str:
    name = name.removesuffix("Error")
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


class MatagentError(Exception):
    """Base error; ``code`` defaults to the snake_cased class name."""

    code: str = ""
    hint: str = ""

    def __init__(self, message: str, *, hint: str = ""):
        super().__init__(message)
        self.message = message
        if hint:
            self.hint = hint
        if not type(self).code:
            type(self).code = _snake(type(self).__name__)

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if "code" not in cls.__dict__:
            cls.code = _snake(cls.__name__)
