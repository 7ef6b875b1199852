"""Prime enumeration."""

from functools import lru_cache


@lru_cache(maxsize=32)
def _sieve(bound: int) -> tuple:
    if bound < 2:
        return ()
    flags = bytearray([1]) * (bound + 1)
    flags[0] = flags[1] = 0
    for i in range(2, int(bound**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i, f in enumerate(flags) if f)


def primes_up_to(bound: int) -> tuple:
    """All primes p <= bound, ascending (sieve of Eratosthenes)."""
    return _sieve(int(bound))
