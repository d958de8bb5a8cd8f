"""
SplitMix64 generator and seed mixing.

SplitMix64 (Steele, Lea and Flood; reference code by S. Vigna), all
arithmetic modulo 2**64:

    state = state + 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output z ^ (z >> 31)

The initial state is the seed reduced modulo 2**64. Bounded integers in
[0, bound) use rejection: outputs below (2**64 - bound) % bound are drawn
again, the accepted output is reduced modulo bound. Pure integer
arithmetic, so streams are identical on every platform.
"""


MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 output function applied to a single 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed: int, *indices: int) -> int:
    """
    Mix a base seed with task indices into an independent 64-bit seed.

    h = base_seed mod 2**64; for each index i: h = mix64(h + GOLDEN_GAMMA * (i + 1)).
    """
    h = base_seed & MASK64
    for index in indices:
        h = mix64(h + GOLDEN_GAMMA * (int(index) + 1))
    return h


class SplitMix64:
    """64-bit SplitMix generator (see module docstring for the exact algorithm)."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def bounded(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound < 1:
            raise ValueError("bound must be positive")
        threshold = (MASK64 + 1 - bound) % bound
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % bound

    def shuffle(self, items: list) -> list:
        """Fisher-Yates shuffle in place, from the last position down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.bounded(i + 1)
            items[i], items[j] = items[j], items[i]
        return items
