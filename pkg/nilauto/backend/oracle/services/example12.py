# oracle/services/example12.py
"""
생성원 x, y_i, z_i 와 관계 y_i² = z_i² = 1, y_i 중심, z_i 끼리 가환, z_i x = x z_i y_i
를 갖는 군의 정규형 계산기

원소는 x^n · z^α · y^γ (n 정수, α·γ 는 비트열) 로 쓴다. z^α x^m = x^m z^α y^{(m mod 2)α} 이므로

    (x^n z^α y^γ)(x^m z^β y^δ) = x^{n+m} z^{α⊕β} y^{γ⊕δ⊕(m mod 2)α}
"""
from dataclasses import dataclass

import numpy as np

from core.exceptions import OracleError
from .integers import encode_nat


def _bits(values, length):
    array = np.zeros(length, dtype=np.int64)
    values = tuple(values)
    array[:len(values)] = values
    return array


def _trim(array):
    values = list(np.asarray(array).tolist())
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class Example12Element:
    n: int = 0
    z: tuple = ()
    y: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'z', _trim(self.z))
        object.__setattr__(self, 'y', _trim(self.y))
        if any(b not in (0, 1) for b in self.z + self.y):
            raise OracleError("z and y exponents are bits")

    def __mul__(self, other):
        length = max(len(self.z), len(other.z), len(self.y), len(other.y))
        alpha, beta = _bits(self.z, length), _bits(other.z, length)
        gamma, delta = _bits(self.y, length), _bits(other.y, length)
        return Example12Element(
            self.n + other.n,
            alpha ^ beta,
            gamma ^ delta ^ ((other.n % 2) * alpha),
        )

    def inverse(self):
        length = max(len(self.z), len(self.y))
        alpha, gamma = _bits(self.z, length), _bits(self.y, length)
        return Example12Element(-self.n, alpha, gamma ^ ((self.n % 2) * alpha))

    @property
    def is_central(self):
        return self.n % 2 == 0 and not self.z


def x_power(n):
    return Example12Element(n)


def z_gen(i):
    return Example12Element(0, (0,) * i + (1,))


def y_gen(i):
    return Example12Element(0, (), (0,) * i + (1,))


def transversal(s, alpha):
    """몫 원소 q_{s,α} 의 대표 x^s ∏ z_i^{α_i}"""
    return Example12Element(s, alpha)


def derive_cocycle(q0, q1):
    """
    대표원으로부터 코사이클 값을 계산

    Args:
        q0, q1 (tuple[int, tuple]): 몫 원소 (s, α), (t, β)

    Returns:
        tuple[int, tuple]: A 원소 (k, γ), 즉 x^{2k} ∏ y_i^{γ_i}
    """
    (s, alpha), (t, beta) = q0, q1
    length = max(len(alpha), len(beta))
    total = (s + t) % 2, _trim(_bits(alpha, length) ^ _bits(beta, length))
    value = transversal(s, alpha) * transversal(t, beta) * transversal(*total).inverse()
    if not value.is_central:
        raise OracleError("transversal product left the centre")
    return value.n // 2, value.y


def split(element):
    """원소 -> (몫 원소 (s, α), A 원소 (k, γ))"""
    s = element.n % 2
    return (s, element.z), ((element.n - s) // 2, element.y)


def join(q, a):
    (s, alpha), (k, gamma) = q, a
    return Example12Element(s + 2 * k, alpha, gamma)


# 단어 부호화: Q 는 {0,1} 위의 (s, α_0, α_1, …), A 는 기호 m + 2y 의 열

def encode_q(q):
    s, alpha = q
    return _trim((s,) + tuple(alpha))


def decode_q(word):
    word = tuple(word)
    if word and word[-1] == 0:
        raise OracleError(f"Q word {word} ends in 0")
    if not word:
        return 0, ()
    return word[0], _trim(word[1:])


def encode_a(a):
    """(k, γ) -> 열 0 = 부호, 열 j>=1 = (|k| 의 비트 j-1) + 2·γ_{j-1}"""
    k, gamma = a
    magnitude = encode_nat(abs(k))
    length = max(len(magnitude), len(gamma))
    m, y = _bits(magnitude, length), _bits(gamma, length)
    return (1 if k < 0 else 0,) + _trim(m + 2 * y)


def decode_a(word):
    word = tuple(word)
    if not word or word[0] not in (0, 1):
        raise OracleError(f"A word {word} must start with a sign symbol")
    if len(word) > 1 and word[-1] == 0:
        raise OracleError(f"A word {word} ends in 0")
    columns = np.array(word[1:], dtype=np.int64)
    magnitude = int(sum(int(bit) << i for i, bit in enumerate((columns % 2).tolist())))
    if word[0] == 1 and magnitude == 0:
        raise OracleError("negative zero is not a valid A word")
    return (-magnitude if word[0] else magnitude), _trim(columns // 2)
