"""Counter-based random streams (Philox4x32-10), stream layout ``rlnc-philox-v1``.

Every random word is a pure function of (key, counter), so trial ``t`` is
reproducible no matter how trials are split across workers or backends.

Layout of the 4 x 32-bit counter::

    coefficients of coded row j:   (block, j, trial, 0)
    selection / erasure draws:     (block, 0, trial, 1)

Each block yields 4 words (lanes); word ``w`` of a stream lives in block
``w >> 2``, lane ``w & 3``.

Bounded integers in ``[0, bound)`` use rejection: a word ``u`` is accepted
iff ``u < 2**32 - (2**32 % bound)`` and maps to ``u % bound``. For
``q = 2**m`` a word instead packs ``32 // m`` coefficients, low bits first,
with no rejection.
"""
from __future__ import annotations

import hashlib

import numpy as np

STREAM_VERSION = "rlnc-philox-v1"
PURPOSE_COEFF = 0
PURPOSE_SELECT = 1

_M0 = np.uint64(0xD2511F53)
_M1 = np.uint64(0xCD9E8D57)
_W0 = 0x9E3779B9
_W1 = 0xBB67AE85
_MASK = np.uint64(0xFFFFFFFF)
_SHIFT = np.uint64(32)


def derive_key(seed: int, *tag) -> tuple[int, int]:
    """Philox key for a (seed, scenario) pair."""
    text = "|".join([STREAM_VERSION, str(int(seed))] + [str(t) for t in tag])
    digest = hashlib.blake2b(text.encode(), digest_size=8).digest()
    return int.from_bytes(digest[:4], "little"), int.from_bytes(digest[4:], "little")


def philox4x32(c0, c1, c2, c3, key: tuple[int, int]):
    """Vectorised Philox4x32-10 over broadcastable counter arrays."""
    c0, c1, c2, c3 = (np.asarray(c, dtype=np.uint64) & _MASK for c in (c0, c1, c2, c3))
    c0, c1, c2, c3 = np.broadcast_arrays(c0, c1, c2, c3)
    k0, k1 = key
    for _ in range(10):
        p0 = c0 * _M0
        p1 = c2 * _M1
        c0, c1, c2, c3 = (
            (p1 >> _SHIFT) ^ c1 ^ np.uint64(k0),
            p1 & _MASK,
            (p0 >> _SHIFT) ^ c3 ^ np.uint64(k1),
            p0 & _MASK,
        )
        k0 = (k0 + _W0) & 0xFFFFFFFF
        k1 = (k1 + _W1) & 0xFFFFFFFF
    return c0, c1, c2, c3


def stream_words(key, purpose: int, trial, row, word):
    """Word number ``word`` of the stream for (trial, row, purpose), vectorised."""
    word = np.asarray(word, dtype=np.uint64)
    lanes = philox4x32(word >> np.uint64(2), row, trial, purpose, key)
    lane = (word & np.uint64(3)).astype(np.intp)
    stacked = np.stack(np.broadcast_arrays(*lanes), axis=-1)
    lane = np.broadcast_to(lane, stacked.shape[:-1])
    return np.take_along_axis(stacked, lane[..., None], axis=-1)[..., 0]


def rejection_limit(bound: int) -> int:
    return (1 << 32) - ((1 << 32) % bound)
