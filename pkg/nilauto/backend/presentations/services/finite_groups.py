# presentations/services/finite_groups.py
import logging
from itertools import product

import numpy as np

from core.exceptions import PresentationError
from oracle.services.nil_element import check_prime

logger = logging.getLogger(__name__)


class FiniteGroupTable:
    """
    유한군 곱셈표

    생성 시 닫힘, 항등원, 역원, 결합법칙을 numpy 로 전수 검사한다.
    """

    def __init__(self, table, identity=0, labels=None, name='group'):
        table = np.array(table, dtype=np.int64)
        n = table.shape[0] if table.ndim == 2 else 0
        if table.ndim != 2 or table.shape != (n, n) or n == 0:
            raise PresentationError("multiplication table must be a non-empty square array")
        if table.min() < 0 or table.max() >= n:
            raise PresentationError("multiplication table entries out of range")
        if not 0 <= identity < n:
            raise PresentationError(f"identity index {identity} out of range")
        elements = np.arange(n)
        if not ((table[identity] == elements).all() and (table[:, identity] == elements).all()):
            raise PresentationError(f"element {identity} is not a two-sided identity")
        if not (table == identity).any(axis=1).all():
            raise PresentationError("some element has no inverse")
        left = table[table]                                  # (ab)c
        right = table[elements[:, None, None], table[None, :, :]]  # a(bc)
        if not (left == right).all():
            a, b, c = np.argwhere(left != right)[0].tolist()
            raise PresentationError(f"table is not associative at ({a},{b},{c})")
        table.flags.writeable = False
        self.table = table
        self.identity = int(identity)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise PresentationError("one label per element is required")
        self.name = name

    @property
    def order(self):
        return self.table.shape[0]

    def multiply(self, a, b):
        return int(self.table[a, b])

    def inverse(self, a):
        return int(np.flatnonzero(self.table[a] == self.identity)[0])

    def element_order(self, a):
        power, k = a, 1
        while power != self.identity:
            power, k = self.multiply(power, a), k + 1
        return k

    def is_abelian(self):
        return bool((self.table == self.table.T).all())

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise PresentationError(f"unknown group element {label!r}") from None


def cyclic(n):
    """ℤ/n"""
    if n < 1:
        raise PresentationError("cyclic group order must be positive")
    elements = np.arange(n)
    return FiniteGroupTable((elements[:, None] + elements[None, :]) % n, name=f"Z/{n}")


def ut3(p):
    """
    GF(p) 위 3×3 상삼각 단위행렬 군

    원소 (a, b, c) 는 행렬 [[1,a,c],[0,1,b],[0,0,1]] 이고 번호는 a·p² + b·p + c 이다.
    곱: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a·b').
    """
    p = check_prime(p)
    triples = list(product(range(p), repeat=3))
    a, b, c = (np.array(col, dtype=np.int64) for col in zip(*triples))
    na = (a[:, None] + a[None, :]) % p
    nb = (b[:, None] + b[None, :]) % p
    nc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    table = na * p * p + nb * p + nc
    labels = [f"({x},{y},{z})" for x, y, z in triples]
    logger.debug(f"UT3(GF({p})) 곱셈표 생성: 위수 {p ** 3}")
    return FiniteGroupTable(table, identity=0, labels=labels, name=f"UT3({p})")
