"""Elementary number theory shared by the lattice and series engines"""

from functools import lru_cache
from math import gcd

import numpy as np
from sympy import divisors as sympy_divisors, factorint, gcdex, isprime, primerange

from models.Errors import DomainError


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not isprime(p):
        raise DomainError(f"{p} is not prime")
    return p


def require_positive(n: int, name: str = "N") -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"{name} must be a positive integer, got {n!r}")
    return n


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple:
    """Prime factorisation of ``n`` as ((p, e), ...) in ascending primes"""

    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple:
    return tuple(int(d) for d in sympy_divisors(n))


def exact_divisors(n: int) -> tuple:
    """Divisors e of n with gcd(e, n/e) = 1 (Hall divisors)"""

    result = [1]
    for p, e in factorize(n):
        result += [d * p**e for d in result]
    return tuple(sorted(result))


def is_exact_divisor(e: int, n: int) -> bool:
    if e < 1 or n % e:
        return False
    return gcd(e, n // e) == 1


def sigma(n: int, k: int = 1) -> int:
    return sum(d**k for d in divisors(n))


def psi(n: int) -> int:
    """Dedekind psi: the number of primitive Hermite forms of determinant n"""

    result = n
    for p, _ in factorize(n):
        result = result // p * (p + 1)
    return result


def sigma_sieve(limit: int) -> np.ndarray:
    """sigma_1(n) for 0 <= n <= limit (index 0 is zero)"""

    sieve = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        sieve[d::d] += d
    return sieve


def psi_sieve(limit: int) -> np.ndarray:
    """Dedekind psi(n) for 0 <= n <= limit (index 0 is zero)"""

    sieve = np.arange(limit + 1, dtype=np.int64)
    for p in primerange(2, limit + 1):
        sieve[p::p] = sieve[p::p] // p * (p + 1)
    return sieve


def extended_gcd(a: int, b: int) -> tuple:
    """Returns (x, y, g) with x*a + y*b = g = gcd(a, b)"""

    x, y, g = (int(value) for value in gcdex(a, b))
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def multiplicity(p: int, n: int) -> int:
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count
