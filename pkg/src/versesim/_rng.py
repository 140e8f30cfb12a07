"""Portable seeded random number generation.

All sampling in this package (corpus subsampling, word-vector
initialisation, negative sampling) goes through xoshiro256**, seeded via
SplitMix64. The generator is implemented directly so that a given seed
produces the same stream on every platform and Python/numpy version;
bounded draws use rejection sampling, which keeps them exactly uniform.
"""

_MASK64 = (1 << 64) - 1


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256(object):
    """xoshiro256** generator with SplitMix64 seed expansion."""

    def __init__(self, seed):
        s = int(seed) & _MASK64
        state = []
        for _ in range(4):
            s = (s + 0x9E3779B97F4A7C15) & _MASK64
            z = s
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
            state.append(z ^ (z >> 31))
        self._s = state

    def next_u64(self):
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def next_float(self):
        """Uniform float64 in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def next_below(self, n):
        """Unbiased uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("bound must be positive, got %r" % (n,))
        # reject the tail of the 64-bit range that would skew the modulus
        limit = (_MASK64 + 1) - ((_MASK64 + 1) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def sample_indices(self, n, k):
        """k distinct indices from range(n), uniformly, in sorted order."""
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n, got k=%d n=%d" % (k, n))
        pool = list(range(n))
        for i in range(k):
            j = i + self.next_below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:k])
