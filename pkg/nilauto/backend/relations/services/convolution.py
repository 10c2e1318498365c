# relations/services/convolution.py
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from automata.services.alphabet import Alphabet
from core.exceptions import InputError

PAD_LABEL = '◇'


@dataclass(frozen=True)
class PaddedAlphabet:
    """
    k 트랙 합성곱 알파벳

    패드 ◇ 는 base.size 번 기호이고, 열(column) 코드는 Σ column_i·(base.size+1)^i 이다.
    전부 패드인 열은 코드가 없다 (합성곱이 만들지 않음).
    """
    base: Alphabet
    arity: int

    def __post_init__(self):
        if self.arity < 1:
            raise InputError("arity must be at least 1")

    @property
    def pad(self):
        return self.base.size

    @property
    def radix(self):
        return self.base.size + 1

    @property
    def packed_size(self):
        return self.radix ** self.arity - 1

    @cached_property
    def alphabet(self):
        return Alphabet(self.packed_size)

    def pack(self, column):
        code = 0
        for i, symbol in enumerate(column):
            if not 0 <= symbol <= self.pad:
                raise InputError(f"column entry {symbol} out of range")
            code += symbol * self.radix ** i
        if code == self.packed_size:
            raise InputError("the all-pad column has no code")
        return code

    def unpack(self, code):
        if not 0 <= code < self.packed_size:
            raise InputError(f"packed symbol {code} out of range")
        column = []
        for _ in range(self.arity):
            code, digit = divmod(code, self.radix)
            column.append(digit)
        return tuple(column)

    def columns(self):
        """모든 열 코드의 자리값 배열 (packed_size, arity)"""
        return unpack_codes(np.arange(self.packed_size, dtype=np.int64), self.radix, self.arity)

    def label(self, code):
        column = self.unpack(code)
        return '(' + ','.join(PAD_LABEL if s == self.pad else self.base.label(s) for s in column) + ')'


def unpack_codes(codes, radix, arity):
    """열 코드 배열을 자리값 행렬로 (트랙 0 이 최하위 자리)"""
    powers = radix ** np.arange(arity, dtype=np.int64)
    return (np.asarray(codes, dtype=np.int64)[:, None] // powers[None, :]) % radix


def pack_digits(digits, radix):
    powers = radix ** np.arange(digits.shape[-1], dtype=np.int64)
    return (digits * powers).sum(axis=-1)


def convolve(words, base):
    """
    k 개의 단어를 같은 길이로 ◇ 패딩해 쌓은 합성곱 단어

    Args:
        words (list[tuple]): base 위의 단어들
        base (Alphabet): 기본 알파벳

    Returns:
        tuple: 합성곱 알파벳 코드열 (길이 = 최대 길이)
    """
    padded = PaddedAlphabet(base, len(words))
    words = [base.check_word(w) for w in words]
    length = max((len(w) for w in words), default=0)
    return tuple(
        padded.pack([w[i] if i < len(w) else padded.pad for w in words])
        for i in range(length)
    )


def deconvolve(packed, arity, base):
    """
    합성곱 단어를 k 개의 단어로 분해

    Args:
        packed (tuple): 합성곱 코드열
        arity (int): 트랙 수
        base (Alphabet): 기본 알파벳

    Returns:
        list[tuple]: 트랙별 단어

    Raises:
        InputError: 패드 뒤에 트랙이 다시 시작되는 잘못된 합성곱
    """
    padded = PaddedAlphabet(base, arity)
    words = [[] for _ in range(arity)]
    ended = [False] * arity
    for code in packed:
        for i, symbol in enumerate(padded.unpack(code)):
            if symbol == padded.pad:
                ended[i] = True
            elif ended[i]:
                raise InputError(f"track {i} resumes after padding")
            else:
                words[i].append(symbol)
    return [tuple(w) for w in words]


def word_matrix(words, pad, width=None):
    """
    단어 목록을 pad 로 채운 (n, width) 기호 행렬로

    Returns:
        ndarray: 행 i 의 앞 len(words[i]) 칸이 단어, 나머지는 pad
    """
    lengths = [len(w) for w in words]
    width = max(lengths, default=0) if width is None else width
    matrix = np.full((len(words), width), pad, dtype=np.int64)
    for i, word in enumerate(words):
        matrix[i, :len(word)] = word
    return matrix


def convolve_batch(tracks, base):
    """
    트랙 행렬들을 행마다 합성곱한 열 코드 행렬

    트랙은 word_matrix 형식이어야 한다. 모든 트랙이 끝난 칸은 전부 패드 코드
    (packed_size) 가 되어 accepts_batch 에서 건너뛴다.

    Args:
        tracks (list[ndarray]): 트랙별 (n, width_i) 기호 행렬
        base (Alphabet): 기본 알파벳

    Returns:
        ndarray: (n, max width_i) 열 코드 행렬
    """
    padded = PaddedAlphabet(base, len(tracks))
    width = max(t.shape[1] for t in tracks)
    digits = np.stack([
        np.pad(t, ((0, 0), (0, width - t.shape[1])), constant_values=padded.pad) for t in tracks
    ], axis=-1)
    return pack_digits(digits, padded.radix)
