"""Counter-based random streams (Threefry-2x32, 20 rounds).

Every draw is a pure function of (key, step, slot), where the key of a path
is derived from (master seed, stream id).  Results therefore do not depend
on how paths are batched or scheduled across workers.
"""
from dataclasses import dataclass

import numpy as np

_ROTATIONS = (13, 15, 26, 6, 17, 29, 16, 24)
_PARITY = np.uint32(0x1BD11BDA)
_MASK64 = (1 << 64) - 1


def threefry2x32(k0, k1, x0, x1):
    """Threefry-2x32-20 block function on uint32 arrays (broadcasting)."""
    shape = np.broadcast_shapes(*(np.shape(v) for v in (k0, k1, x0, x1)))
    k0, k1, x0, x1 = np.broadcast_arrays(
        *(np.atleast_1d(np.asarray(v, dtype=np.uint32)) for v in (k0, k1, x0, x1)))
    ks = (k0, k1, k0 ^ k1 ^ _PARITY)
    x0 = x0 + ks[0]
    x1 = x1 + ks[1]
    for i in range(5):
        for j in range(4):
            r = _ROTATIONS[(i % 2) * 4 + j]
            x0 = x0 + x1
            x1 = (x1 << np.uint32(r)) | (x1 >> np.uint32(32 - r))
            x1 = x1 ^ x0
        x0 = x0 + ks[(i + 1) % 3]
        x1 = x1 + ks[(i + 2) % 3] + np.uint32(i + 1)
    if x0.shape == (1,) and shape == ():
        return x0[0], x1[0]
    return x0, x1


def _split(value):
    v = np.asarray(value, dtype=np.uint64)
    return (v & np.uint64(0xFFFFFFFF)).astype(np.uint32), (v >> np.uint64(32)).astype(np.uint32)


def _join(lo, hi):
    return lo.astype(np.uint64) | (hi.astype(np.uint64) << np.uint64(32))


def _as_u64(value):
    if isinstance(value, (int, np.integer)):
        return np.uint64(int(value) & _MASK64)
    return np.asarray(value).astype(np.uint64)


def spawn(seed, *labels):
    """Derive a child 64-bit seed from ``seed`` and integer labels.

    Labels may be arrays; the result broadcasts over them.
    """
    key = _as_u64(seed)
    for label in labels:
        k0, k1 = _split(key)
        c0, c1 = _split(_as_u64(label))
        # second counter word tags the derivation so it never collides with draws
        y0, y1 = threefry2x32(k0, k1, c0 ^ np.uint32(0x9E3779B9), c1 ^ np.uint32(0x7F4A7C15))
        key = _join(y0, y1)
    return key


def path_keys(seed, streams):
    """Per-path keys, shape (P, 2) uint32, for stream ids ``streams``."""
    key = spawn(seed, np.asarray(streams, dtype=np.uint64))
    lo, hi = _split(key)
    return np.stack([np.atleast_1d(lo), np.atleast_1d(hi)], axis=-1)


def uniforms(keys, step, nslots):
    """Open-interval uniforms, shape (P, nslots), for draw counters (step, slot)."""
    keys = np.asarray(keys, dtype=np.uint32)
    slots = np.arange(nslots, dtype=np.uint32)
    y0, y1 = threefry2x32(keys[:, :1], keys[:, 1:], np.uint32(step), slots[None, :])
    bits = _join(y0, y1) >> np.uint64(11)
    return (bits.astype(np.float64) + 0.5) * (1.0 / 9007199254740992.0)


def normals(u):
    """Box–Muller: (P, 2q) uniforms -> (P, 2q) standard normals."""
    u1, u2 = u[:, 0::2], u[:, 1::2]
    rad = np.sqrt(-2.0 * np.log(u1))
    z = np.empty_like(u)
    z[:, 0::2] = rad * np.cos(2.0 * np.pi * u2)
    z[:, 1::2] = rad * np.sin(2.0 * np.pi * u2)
    return z


def directions(u, n):
    """Uniform points on S^{n-1} from (P, 2·ceil(n/2)) uniforms."""
    z = normals(u)[:, :n]
    return z / np.linalg.norm(z, axis=1, keepdims=True)


@dataclass(frozen=True)
class RngStream:
    """One reproducible stream: a master seed and a stream (path) id."""
    seed: int
    stream: int = 0

    @property
    def key(self):
        return path_keys(self.seed, [self.stream])

    def uniforms(self, step, nslots):
        return uniforms(self.key, step, nslots)[0]
