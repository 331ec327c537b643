# alkkit/errors.py
"""
Exception types shared by the word engine, the curve engine and the CLI.
"""
from __future__ import annotations
from typing import Any, Optional, Tuple


class AlkError(Exception):
    """Base exception for alk-kit errors."""
    kind = "input"

    def as_dict(self) -> dict:
        return {"error": self.kind, "type": type(self).__name__, "detail": str(self)}


class GroupError(AlkError):
    """Bad letters, mismatched genera or an operation undefined on its input."""
    pass


class AbelianCentralizer(GroupError):
    """
    Raised by primitive_root at genus 1: the centralizer is the whole group,
    so there is no cyclic root to report.
    """
    def __init__(self, genus: int):
        self.genus = genus
        super().__init__(f"centralizers in the genus-{genus} surface group are the whole group")


class GenericityError(AlkError):
    """Input is not in general position; nothing is repaired silently."""
    def __init__(self, message: str, where: Any = None, interval: Optional[Tuple[Any, Any]] = None):
        self.msg = message
        self.where = where
        self.interval = interval
        super().__init__(message)

    def as_dict(self) -> dict:
        doc: dict = {"error": "genericity", "message": self.msg}
        if self.where is not None:
            doc["where"] = str(self.where)
        if self.interval is not None:
            doc["interval"] = [str(t) for t in self.interval]
        return doc


class InputError(AlkError):
    """Malformed input document."""
    def __init__(self, path: str, detail: str, line: Optional[int] = None):
        self.path = path
        self.line = line
        self.detail = detail
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {detail}")

    def as_dict(self) -> dict:
        return {"error": "input", "file": self.path, "line": self.line, "detail": self.detail}


class MissingRepresentative(AlkError):
    def __init__(self, class_word: str, genus: int):
        self.class_word = class_word
        self.genus = genus
        super().__init__(f"no drawn representative for class [{class_word}] at genus {genus}")


class PresetError(AlkError):
    pass


class ResolutionMismatch(AlkError):
    """The four resolution movies do not share a base link."""
    pass
