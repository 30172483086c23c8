"""
Domain-spec grammar for the command line.

Supported forms (numbers accept signs, decimals and exponents):
- "disk"                       unit disk about the origin
- "disk:r" / "disk:r:cx,cy"    disk of radius r, optionally centered at (cx, cy)
- "square:side[:cx,cy]"        axis-aligned square, centered at the origin unless given
- "polygon:x1,y1;x2,y2;..."    convex polygon, vertices counterclockwise
- "reuleaux:width[:cx,cy[:angle]]"  Reuleaux triangle of the given width

The pose is always explicit: nothing is recentered. "disk:1:1,0" puts the
origin on the boundary, which is the worst case for Steinhaus sets.

Example:
    from crofton_cli.services.domain_spec import parse_domain

    parse_domain("reuleaux:1:0,0:0.3")
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..errors import InvalidArgumentError
from ..models import ConvexDomain, ConvexPolygon, Disk, Reuleaux

# ----------------------------- Tokenizer -----------------------------

TokenType = str


@dataclass(frozen=True)
class Token:
    type: TokenType
    value: str
    pos: int


class Lexer:
    """Tokens: IDENT [A-Za-z]+, NUMBER (float literal), COLON, COMMA, SEMI."""

    _PUNCT = {":": "COLON", ",": "COMMA", ";": "SEMI"}

    def __init__(self, text: str):
        self.original = text
        self.text = text.strip()
        self.i = 0

    def _peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def _advance(self) -> str:
        ch = self._peek()
        self.i += 1
        return ch

    def _error_near(self) -> str:
        start = max(0, self.i - 10)
        end = min(len(self.text), self.i + 10)
        snippet = self.text[start:end]
        return f"near '{snippet}' at {self.i}"

    def _number(self) -> str:
        num = []
        if self._peek() in "+-":
            num.append(self._advance())
        while self._peek().isdigit() or self._peek() == ".":
            num.append(self._advance())
        if self._peek() in ("e", "E"):
            num.append(self._advance())
            if self._peek() in "+-":
                num.append(self._advance())
            while self._peek().isdigit():
                num.append(self._advance())
        text = "".join(num)
        try:
            float(text)
        except ValueError:
            raise InvalidArgumentError(f"Malformed number '{text}' {self._error_near()}") from None
        return text

    def tokens(self) -> List[Token]:
        toks: List[Token] = []
        while self.i < len(self.text):
            ch = self._peek()
            if ch.isspace():
                self._advance()
                continue

            pos = self.i

            if ch in self._PUNCT:
                toks.append(Token(self._PUNCT[ch], ch, pos))
                self._advance()
                continue

            if ch.isdigit() or ch in "+-.":
                toks.append(Token("NUMBER", self._number(), pos))
                continue

            if ch.isalpha():
                ident = []
                while self._peek().isalpha() or self._peek() == "_":
                    ident.append(self._advance())
                toks.append(Token("IDENT", "".join(ident).lower(), pos))
                continue

            raise InvalidArgumentError(f"Invalid character '{ch}' {self._error_near()}")

        return toks


# ------------------------------- Parser ------------------------------

class Parser:
    def __init__(self, tokens: List[Token], text: str = ""):
        self.tokens = tokens
        self.text = text
        self.i = 0

    def _peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _match(self, *types: TokenType) -> Optional[Token]:
        tok = self._peek()
        if tok and tok.type in types:
            self.i += 1
            return tok
        return None

    def _error_near(self, tok: Optional[Token]) -> str:
        if tok is None:
            return f"at end of '{self.text}'"
        return f"near '{tok.value}' at {tok.pos}"

    def _expect_number(self) -> float:
        tok = self._match("NUMBER")
        if tok is None:
            raise InvalidArgumentError(f"Expected a number {self._error_near(self._peek())}")
        return float(tok.value)

    def _point(self) -> Tuple[float, float]:
        x = self._expect_number()
        if not self._match("COMMA"):
            raise InvalidArgumentError(f"Expected ',' between coordinates {self._error_near(self._peek())}")
        return x, self._expect_number()

    def parse(self) -> ConvexDomain:
        if not self.tokens:
            raise InvalidArgumentError("Empty domain spec")
        kind = self._match("IDENT")
        if kind is None:
            raise InvalidArgumentError(f"Expected a domain kind {self._error_near(self._peek())}")
        handler = getattr(self, f"_parse_{kind.value}", None)
        if handler is None:
            raise InvalidArgumentError(f"Unknown domain kind {self._error_near(kind)}")
        domain = handler()
        if self._peek() is not None:
            raise InvalidArgumentError(f"Unexpected trailing input {self._error_near(self._peek())}")
        return domain

    def _parse_disk(self) -> ConvexDomain:
        radius, center = 1.0, (0.0, 0.0)
        if self._match("COLON"):
            radius = self._expect_number()
            if self._match("COLON"):
                center = self._point()
        return Disk(center, radius)

    def _parse_square(self) -> ConvexDomain:
        if not self._match("COLON"):
            raise InvalidArgumentError(f"square needs a side length {self._error_near(self._peek())}")
        side = self._expect_number()
        if side <= 0:
            raise InvalidArgumentError(f"Square side must be positive, got {side}")
        center = (0.0, 0.0)
        if self._match("COLON"):
            center = self._point()
        return ConvexPolygon.square(side, center)

    def _parse_polygon(self) -> ConvexDomain:
        if not self._match("COLON"):
            raise InvalidArgumentError(f"polygon needs a vertex list {self._error_near(self._peek())}")
        vertices = [self._point()]
        while self._match("SEMI"):
            vertices.append(self._point())
        return ConvexPolygon(tuple(vertices))

    def _parse_reuleaux(self) -> ConvexDomain:
        width, center, angle = 1.0, (0.0, 0.0), 0.0
        if self._match("COLON"):
            width = self._expect_number()
            if self._match("COLON"):
                center = self._point()
                if self._match("COLON"):
                    angle = self._expect_number()
        return Reuleaux.from_width(width, center, angle)


def parse_domain(text: str) -> ConvexDomain:
    """Parse a domain spec such as "disk", "square:1:0.5,0.5" or "reuleaux:1"."""
    return Parser(Lexer(text).tokens(), text.strip()).parse()


__all__ = ["Token", "Lexer", "Parser", "parse_domain"]
