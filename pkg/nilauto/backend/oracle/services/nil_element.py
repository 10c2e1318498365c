# oracle/services/nil_element.py
"""
클래스 2, 지수 p 군의 정규형 원소

원소는 ᾱ·c 꼴로 저장한다: ᾱ = x_0^{α_0} … x_{r-1}^{α_{r-1}}, c 는 중심 성분.
곱셈은 세 종류 모두 한 규칙을 쓴다:

    ᾱ · β̄ = (α+β)‾ · ∏_{i<k} [x_i, x_k]^{-α_k β_i}

free 는 [x_i, x_k] 를 각각 독립 생성원으로, E 는 모두 z 로, H 는 z_k 로 보낸다.
"""
import logging
from dataclasses import dataclass

import numpy as np
import pyparsing as pp
from sympy import isprime

from core.exceptions import InvalidPrimeError, OracleError
from core.utils import get_setting

logger = logging.getLogger(__name__)

FREE, E, H = 'free', 'E', 'H'
KINDS = (FREE, E, H)


def check_prime(p):
    if not isinstance(p, (int, np.integer)) or p == 2 or not isprime(int(p)):
        raise InvalidPrimeError(p)
    return int(p)


def _central_shape(kind, rank):
    if kind == FREE:
        return (rank, rank)
    if kind == E:
        return ()
    return (rank,)


@dataclass(frozen=True)
class NilElement:
    kind: str
    p: int
    alpha: tuple
    central: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise OracleError(f"unknown element kind {self.kind!r}")
        if self.kind == H and self.central and self.central[0] % self.p:
            raise OracleError("H central coordinate v_0 must be 0")

    @property
    def rank(self):
        return len(self.alpha)

    # numpy 변환

    def _alpha(self):
        return np.array(self.alpha, dtype=np.int64)

    def _central(self):
        return np.array(self.central, dtype=np.int64).reshape(_central_shape(self.kind, self.rank))

    @classmethod
    def _from_arrays(cls, kind, p, alpha, central):
        alpha = np.mod(alpha, p)
        central = np.mod(central, p)
        if kind == FREE:
            central = np.triu(central, 1)
            central = tuple(map(tuple, central.tolist()))
        elif kind == E:
            central = (int(central),)
        else:
            central = tuple(central.tolist())
        return cls(kind, p, tuple(alpha.tolist()), central)

    # 생성자

    @classmethod
    def identity(cls, kind, p, rank=None):
        rank = rank or get_setting('NILAUTO_ORACLE_RANK')
        return cls._from_arrays(kind, check_prime(p), np.zeros(rank, dtype=np.int64),
                                np.zeros(_central_shape(kind, rank), dtype=np.int64))

    @classmethod
    def generator(cls, kind, p, index, rank=None):
        """x_index"""
        element = cls.identity(kind, p, rank)
        if not 0 <= index < element.rank:
            raise OracleError(f"generator x{index} exceeds rank {element.rank}")
        alpha = element._alpha()
        alpha[index] = 1
        return cls._from_arrays(kind, element.p, alpha, element._central())

    @classmethod
    def central_generator(cls, kind, p, i=None, k=None, rank=None):
        """
        중심 생성원: E 는 z, H 는 z_k, free 는 [x_i, x_k]

        Args:
            kind (str): 'free' | 'E' | 'H'
            p (int): 홀수 소수
            i, k (int): free 는 i<k 둘 다, H 는 k 만 사용
        """
        element = cls.identity(kind, p, rank)
        central = element._central()
        if kind == E:
            central = np.int64(1)
        elif kind == H:
            if k is None or not 1 <= k < element.rank:
                raise OracleError(f"z_{k} is not a central generator of H at rank {element.rank}")
            central[k] = 1
        else:
            if i is None or k is None or not 0 <= i < k < element.rank:
                raise OracleError(f"[x{i},x{k}] needs 0 <= i < k < rank")
            central[i, k] = 1
        return cls._from_arrays(kind, element.p, element._alpha(), central)

    @property
    def is_central(self):
        return not any(self.alpha)

    @property
    def is_identity(self):
        return self.is_central and not np.any(self._central())

    def _check_compatible(self, other):
        if (self.kind, self.p, self.rank) != (other.kind, other.p, other.rank):
            raise OracleError(
                f"cannot combine {self.kind}/p={self.p}/rank={self.rank} with "
                f"{other.kind}/p={other.p}/rank={other.rank}"
            )

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, m):
        return power(self, m)

    def __str__(self):
        return format_element(self)


def correction(alpha, beta):
    """T[i, k] = β_i α_k (i < k): [x_i, x_k] 의 지수에서 빼는 양"""
    return np.triu(np.outer(beta, alpha), 1)


def multiply(a, b):
    """
    정규형 곱

    Args:
        a, b (NilElement): 같은 종류, p, 계수의 원소

    Returns:
        NilElement: a·b
    """
    a._check_compatible(b)
    alpha, beta = a._alpha(), b._alpha()
    t = correction(alpha, beta)
    if a.kind == FREE:
        central = a._central() + b._central() - t
    elif a.kind == E:
        central = a._central() + b._central() - t.sum()
    else:
        central = a._central() + b._central() - t.sum(axis=0)
    return NilElement._from_arrays(a.kind, a.p, alpha + beta, central)


def inverse(a):
    """a·a⁻¹ = e 가 되는 원소"""
    shifted = NilElement._from_arrays(a.kind, a.p, -a._alpha(), np.zeros_like(a._central()))
    leftover = multiply(a, shifted)._central()
    return NilElement._from_arrays(a.kind, a.p, -a._alpha(), -leftover)


def power(a, m):
    """a^m (m >= 0, 반복 제곱)"""
    if m < 0:
        return power(inverse(a), -m)
    result = NilElement.identity(a.kind, a.p, a.rank)
    base = a
    while m:
        if m & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        m >>= 1
    return result


def commutator(a, b):
    """[a, b] = a⁻¹ b⁻¹ a b"""
    return multiply(multiply(inverse(a), inverse(b)), multiply(a, b))


def bilinear_form(a, b):
    """∏ [x_i,x_k]^{α_i β_k − α_k β_i} 를 직접 계산 (commutator 와 같아야 함)"""
    a._check_compatible(b)
    alpha, beta = a._alpha(), b._alpha()
    form = np.triu(np.outer(alpha, beta) - np.outer(beta, alpha), 1)
    if a.kind == FREE:
        central = form
    elif a.kind == E:
        central = form.sum()
    else:
        central = form.sum(axis=0)
    return NilElement._from_arrays(a.kind, a.p, np.zeros_like(alpha), central)


def to_quotient(element, kind):
    """free 원소를 E 또는 H 로 보내는 몫 사상"""
    if element.kind != FREE or kind not in (E, H):
        raise OracleError("quotient maps go from 'free' to 'E' or 'H'")
    central = element._central()
    central = central.sum() if kind == E else central.sum(axis=0)
    return NilElement._from_arrays(kind, element.p, element._alpha(), central)


# 텍스트 형식: "z^2 x0 x1" (E), "z1^2 x0 x1" (H), "x0^2 x1 [x0,x1]^2" (free), 항등원은 "e"

_INTEGER = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
_EXPONENT = pp.Optional(pp.Suppress('^') + _INTEGER, default=1)
_INDEX = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
_X_TAG = pp.Combine(pp.Literal('x') + pp.Word(pp.nums)).set_parse_action(lambda t: int(t[0][1:]))
_BRACKET = pp.Group(
    pp.Suppress('[') + _X_TAG + pp.Suppress(',') + _X_TAG + pp.Suppress(']') + _EXPONENT
)
_FACTOR = (
    pp.Group(pp.Literal('x') + _INDEX + _EXPONENT)
    | pp.Group(pp.Literal('z') + pp.Optional(_INDEX, default=None) + _EXPONENT)
    | _BRACKET
)
ELEMENT_GRAMMAR = (pp.Suppress(pp.Keyword('e')) | pp.ZeroOrMore(_FACTOR)) + pp.StringEnd()


def parse_element(text, kind, p, rank=None):
    """
    텍스트를 원소로 (인자를 왼쪽부터 곱함)

    Raises:
        OracleError: 문법 오류 또는 종류에 맞지 않는 생성원
    """
    try:
        factors = ELEMENT_GRAMMAR.parse_string(text.strip())
    except pp.ParseException as e:
        raise OracleError(f"cannot parse element {text!r}: {e}") from None
    result = NilElement.identity(kind, p, rank)
    for factor in factors:
        head = factor[0]
        if head == 'x':
            g = NilElement.generator(kind, p, factor[1], result.rank)
        elif head == 'z':
            if kind == FREE:
                raise OracleError("free elements use [xi,xk] for central generators")
            if kind == E and factor[1] is not None:
                raise OracleError("E has a single central generator z")
            g = NilElement.central_generator(kind, p, k=factor[1], rank=result.rank)
        else:
            if kind != FREE:
                raise OracleError("bracket generators are only used for free elements")
            g = NilElement.central_generator(kind, p, i=factor[0], k=factor[1], rank=result.rank)
        result = multiply(result, power(g, factor[-1]))
    return result


def _term(name, exponent):
    return name if exponent == 1 else f"{name}^{exponent}"


def format_element(element):
    """정규형 텍스트 (E/H 는 중심 성분이 앞, free 는 뒤)"""
    xs = [_term(f"x{i}", a) for i, a in enumerate(element.alpha) if a]
    central = element._central()
    if element.kind == E:
        zs = [_term("z", int(central))] if central else []
        parts = zs + xs
    elif element.kind == H:
        parts = [_term(f"z{k}", int(v)) for k, v in enumerate(central.tolist()) if v] + xs
    else:
        brackets = [
            _term(f"[x{i},x{k}]", int(central[i, k]))
            for i in range(element.rank) for k in range(i + 1, element.rank) if central[i, k]
        ]
        parts = xs + brackets
    return ' '.join(parts) or 'e'
