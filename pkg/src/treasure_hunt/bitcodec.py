"""Bit strings, the self-delimiting advice encoding, and sector arithmetic.

Bit strings are plain ``str`` objects over ``'0'``/``'1'``.  The encoding
doubles every bit of every field (``0 -> 00``, ``1 -> 11``) and separates
consecutive fields with ``01``; the last field is the binary form of LogSum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

_DOUBLE = {"0": "00", "1": "11"}
_PAIR = {"00": "0", "11": "1"}
SEPARATOR = "01"


class MalformedAdvice(ValueError):
    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at bit offset {offset}")


def check_bits(bits: str) -> str:
    for i, ch in enumerate(bits):
        if ch not in "01":
            raise MalformedAdvice(f"character {ch!r} is not a bit", i)
    return bits


def ceil_log2(d: int) -> int:
    """ceil(log2 d) for d >= 1, with ceil(log2 1) = 0."""
    if d < 1:
        raise ValueError(f"ceil_log2 needs d >= 1, got {d}")
    return (d - 1).bit_length()


def int_to_bits(value: int) -> str:
    """Minimal binary representation; zero is ``'0'``."""
    if value < 0:
        raise ValueError("negative value")
    return format(value, "b")


def bits_to_int(bits: str) -> int:
    return int(bits, 2) if bits else 0


@dataclass(frozen=True)
class AdvicePayload:
    substrings: tuple[str, ...]
    logsum_bits: str

    @property
    def D(self) -> int:
        return len(self.substrings)

    @property
    def ell(self) -> int:
        return sum(len(a) for a in self.substrings)

    @property
    def logsum(self) -> int:
        return bits_to_int(self.logsum_bits)


def concat(substrings: Sequence[str], ls: str) -> str:
    fields = list(substrings) + [ls]
    return SEPARATOR.join("".join(_DOUBLE[b] for b in check_bits(f)) for f in fields)


def decode(bits: str) -> AdvicePayload:
    if len(bits) % 2:
        raise MalformedAdvice("odd-length advice", len(bits) - 1)
    fields: list[str] = []
    current: list[str] = []
    for off in range(0, len(bits), 2):
        pair = bits[off:off + 2]
        if pair == SEPARATOR:
            fields.append("".join(current))
            current = []
        elif pair in _PAIR:
            current.append(_PAIR[pair])
        else:
            raise MalformedAdvice(f"invalid pair {pair!r}", off)
    fields.append("".join(current))
    return AdvicePayload(tuple(fields[:-1]), fields[-1])


def expected_substring_length(deg: int, ell: int, logsum: int) -> Optional[int]:
    """Number of advice bits the oracle spends at a node of degree ``deg``.

    Returns None (a mismatch) when the node branches but LogSum is zero, since
    no such node can lie on the oracle's path.
    """
    bits = ceil_log2(deg)
    if bits == 0:
        return 0
    if logsum == 0:
        return None
    return bits * ell // logsum


def sector_size(deg: int, z: int) -> int:
    return -(-deg >> z)


def encode_sector_number(deg: int, port: int, z: int) -> str:
    if not 0 <= port < deg:
        raise ValueError(f"port {port} outside 0..{deg - 1}")
    if z < 0:
        raise ValueError("negative sector-code width")
    number = port // sector_size(deg, z)
    return format(number, f"0{z}b") if z else ""


def get_sector(deg: int, code: str) -> range:
    """Port interval named by ``code``; may extend past ``deg - 1``."""
    size = sector_size(deg, len(code))
    number = bits_to_int(code)
    return range(number * size, (number + 1) * size)
