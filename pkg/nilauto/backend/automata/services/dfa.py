# automata/services/dfa.py
import logging
from collections import deque

import numpy as np

from core.exceptions import AlphabetMismatchError, InputError
from core.utils import check_state_limit
from .alphabet import Alphabet

logger = logging.getLogger(__name__)


class Dfa:
    """
    완전(complete) 결정적 유한 오토마타

    delta 는 (상태 수, 알파벳 크기) 정수 배열이며 모든 (상태, 기호) 쌍에 대해 정의된다.
    생성 후에는 변경하지 않는다.
    """

    __slots__ = ('alphabet', 'delta', 'start', 'accepting')

    def __init__(self, alphabet, delta, start, accepting):
        delta = np.array(delta, dtype=np.int64, copy=True)
        if delta.ndim != 2 or delta.shape[1] != alphabet.size or delta.shape[0] < 1:
            raise InputError(f"transition table must have shape (states, {alphabet.size})")
        n = delta.shape[0]
        if delta.size and (delta.min() < 0 or delta.max() >= n):
            raise InputError("transition table refers to an unknown state")
        if not 0 <= start < n:
            raise InputError(f"start state {start} out of range")
        acc = np.zeros(n, dtype=bool)
        if isinstance(accepting, np.ndarray) and accepting.dtype == bool:
            if accepting.shape != (n,):
                raise InputError("accepting mask must have one entry per state")
            acc[:] = accepting
        else:
            ids = np.asarray(sorted(int(s) for s in accepting), dtype=np.int64)
            if ids.size and (ids.min() < 0 or ids.max() >= n):
                raise InputError("accepting state out of range")
            acc[ids] = True
        delta.flags.writeable = False
        acc.flags.writeable = False
        self.alphabet = alphabet
        self.delta = delta
        self.start = int(start)
        self.accepting = acc

    @property
    def state_count(self):
        return self.delta.shape[0]

    @property
    def accepting_states(self):
        return frozenset(np.flatnonzero(self.accepting).tolist())

    def __repr__(self):
        return f"Dfa(states={self.state_count}, alphabet={self.alphabet.size}, accepting={len(self.accepting_states)})"

    # 생성자

    @classmethod
    def from_transitions(cls, alphabet, state_count, start, accepting, transitions, sink=None):
        """
        (상태, 기호, 상태) 목록으로 DFA 생성

        빠진 전이는 sink 로 채우고, sink 가 없으면 새 거부 상태를 추가한다.
        """
        delta = np.full((state_count, alphabet.size), -1, dtype=np.int64)
        for s, a, t in transitions:
            if not (0 <= s < state_count and 0 <= t < state_count):
                raise InputError(f"transition ({s},{a},{t}) refers to an unknown state")
            if not 0 <= a < alphabet.size:
                raise InputError(f"transition ({s},{a},{t}) uses a symbol out of range")
            delta[s, a] = t
        missing = delta < 0
        if missing.any():
            if sink is None:
                sink = state_count
                delta = np.vstack([delta, np.full((1, alphabet.size), sink, dtype=np.int64)])
                missing = np.vstack([missing, np.zeros((1, alphabet.size), dtype=bool)])
            delta[missing] = sink
        return cls(alphabet, delta, start, sorted(accepting))

    @classmethod
    def from_function(cls, alphabet, initial, step, accept):
        """
        상태 키에 대한 전이 함수를 BFS 로 펼쳐 DFA 생성

        Args:
            alphabet (Alphabet): 알파벳
            initial: 해시 가능한 초기 상태 키
            step (callable): (key, symbol) -> key 또는 None (None 은 거부 싱크)
            accept (callable): key -> bool

        Returns:
            Dfa: 도달 가능한 상태만 포함한 DFA
        """
        index = {initial: 0}
        keys = [initial]
        rows = []
        sink = None
        i = 0
        while i < len(keys):
            key = keys[i]
            row = []
            for symbol in range(alphabet.size):
                nxt = None if key is sink else step(key, symbol)
                if nxt is None:
                    if sink is None:
                        sink = object()
                        index[sink] = len(keys)
                        keys.append(sink)
                    nxt = sink
                j = index.get(nxt)
                if j is None:
                    j = len(keys)
                    index[nxt] = j
                    keys.append(nxt)
                row.append(j)
            rows.append(row)
            i += 1
            check_state_limit(len(keys), 'from_function')
        accepting = [k for k, key in enumerate(keys) if key is not sink and accept(key)]
        return cls(alphabet, np.array(rows, dtype=np.int64), 0, accepting)

    @classmethod
    def universal(cls, alphabet):
        return cls(alphabet, np.zeros((1, alphabet.size), dtype=np.int64), 0, [0])

    @classmethod
    def empty(cls, alphabet):
        return cls(alphabet, np.zeros((1, alphabet.size), dtype=np.int64), 0, [])

    @classmethod
    def word(cls, alphabet, word):
        """단일 단어만 받는 DFA"""
        word = alphabet.check_word(word)
        n = len(word)
        sink = n + 1
        delta = np.full((n + 2, alphabet.size), sink, dtype=np.int64)
        for i, symbol in enumerate(word):
            delta[i, symbol] = i + 1
        return cls(alphabet, delta, 0, [n])

    # 질의

    def run(self, word):
        state = self.start
        for symbol in word:
            state = int(self.delta[state, symbol])
        return state

    def reachable(self):
        """시작 상태에서 도달 가능한 상태의 불리언 마스크"""
        seen = np.zeros(self.state_count, dtype=bool)
        seen[self.start] = True
        frontier = np.array([self.start])
        while frontier.size:
            nxt = np.unique(self.delta[frontier])
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
        return seen

    def co_reachable(self):
        """수락 상태에 도달할 수 있는 상태의 불리언 마스크"""
        live = self.accepting.copy()
        while True:
            grown = live | live[self.delta].any(axis=1)
            if (grown == live).all():
                return live
            live = grown


def _check_word(dfa, word):
    return dfa.alphabet.check_word(word)


def accepts(dfa, word):
    """
    단어 수락 여부

    Args:
        dfa (Dfa): 오토마타
        word (iterable[int]): 알파벳 범위 안의 기호열

    Returns:
        bool: word ∈ L(dfa)
    """
    word = _check_word(dfa, word)
    return bool(dfa.accepting[dfa.run(word)])


def accepts_batch(dfa, words):
    """
    행렬의 각 행을 단어로 읽은 수락 여부

    기호 alphabet.size 는 빈 칸으로 보고 상태를 유지한다 (행 끝의 채움용).

    Args:
        dfa (Dfa): 오토마타
        words (ndarray): (n, width) 정수 행렬

    Returns:
        ndarray[bool]: 행별 수락 여부
    """
    words = np.asarray(words, dtype=np.int64)
    if words.ndim != 2:
        raise InputError("batch words must form a 2-d array")
    if words.size and (words.min() < 0 or words.max() > dfa.alphabet.size):
        raise InputError(f"batch symbol out of range for alphabet of size {dfa.alphabet.size}")
    stay = np.arange(dfa.state_count, dtype=np.int64)[:, None]
    delta = np.hstack([dfa.delta, stay])
    state = np.full(words.shape[0], dfa.start, dtype=np.int64)
    for column in words.T:
        state = delta[state, column]
    return dfa.accepting[state]


def _same_alphabet(a, b):
    if a.alphabet.size != b.alphabet.size:
        raise AlphabetMismatchError(f"alphabet sizes differ ({a.alphabet.size} vs {b.alphabet.size})")


def canonical(dfa):
    """
    BFS 순서(기호 순서대로)로 상태 번호를 다시 매기고 도달 불가능한 상태를 제거

    같은 언어의 최소 DFA 는 이 번호 매김에서 바이트 단위로 동일해진다.
    """
    n = dfa.state_count
    new_id = np.full(n, -1, dtype=np.int64)
    new_id[dfa.start] = 0
    order = [dfa.start]
    i = 0
    while i < len(order):
        targets = dfa.delta[order[i]]
        _, first = np.unique(targets, return_index=True)
        for t in targets[np.sort(first)].tolist():
            if new_id[t] < 0:
                new_id[t] = len(order)
                order.append(t)
        i += 1
    order = np.array(order, dtype=np.int64)
    delta = new_id[dfa.delta[order]]
    return Dfa(dfa.alphabet, delta, 0, dfa.accepting[order])


def _row_classes(matrix):
    """행이 같은 것끼리 같은 번호를 매김 (번호 수, 번호 배열)"""
    matrix = np.ascontiguousarray(matrix, dtype=np.int64)
    rows = matrix.view(np.dtype((np.void, matrix.dtype.itemsize * matrix.shape[1]))).ravel()
    uniq, inverse = np.unique(rows, return_inverse=True)
    return len(uniq), inverse.reshape(-1).astype(np.int64)


def minimize(dfa):
    """
    최소화 (Moore 분할 정제) 후 정규 번호 매김

    Args:
        dfa (Dfa): 완전 DFA

    Returns:
        Dfa: 같은 언어를 받는 최소 완전 DFA
    """
    trimmed = canonical(dfa)
    delta = trimmed.delta
    count, classes = _row_classes(trimmed.accepting.astype(np.int64).reshape(-1, 1))
    rounds = 0
    while True:
        signature = np.column_stack([classes, classes[delta]])
        new_count, new_classes = _row_classes(signature)
        rounds += 1
        if new_count == count:
            break
        count, classes = new_count, new_classes
    _, representatives = np.unique(classes, return_index=True)
    quotient = classes[delta[representatives]]
    result = Dfa(dfa.alphabet, quotient, int(classes[trimmed.start]), trimmed.accepting[representatives])
    logger.debug(f"최소화: {dfa.state_count} -> {count} 상태 ({rounds}회 정제)")
    return canonical(result)


def complement(dfa):
    """Σ* 에 대한 여집합 (완전 DFA 이므로 수락 상태 반전)"""
    return Dfa(dfa.alphabet, dfa.delta, dfa.start, ~dfa.accepting)


def product(a, b, combine):
    """
    두 DFA 의 도달 가능 곱 구성

    Args:
        a, b (Dfa): 같은 알파벳의 DFA
        combine (callable): (수락 배열 a, 수락 배열 b) -> 수락 배열

    Returns:
        Dfa: 곱 오토마타
    """
    _same_alphabet(a, b)
    nb = b.state_count
    start = a.start * nb + b.start
    index = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        sa, sb = divmod(order[i], nb)
        codes = a.delta[sa] * nb + b.delta[sb]
        uniq, inverse = np.unique(codes, return_inverse=True)
        ids = np.empty(len(uniq), dtype=np.int64)
        for j, code in enumerate(uniq.tolist()):
            k = index.get(code)
            if k is None:
                k = len(order)
                index[code] = k
                order.append(code)
            ids[j] = k
        rows.append(ids[inverse.reshape(-1)])
        i += 1
        if i % 4096 == 0:
            check_state_limit(len(order), 'product')
    order = np.array(order, dtype=np.int64)
    acc = combine(a.accepting[order // nb], b.accepting[order % nb])
    return Dfa(a.alphabet, np.vstack(rows), 0, acc)


def intersect(a, b):
    return product(a, b, np.logical_and)


def union(a, b):
    return product(a, b, np.logical_or)


def difference(a, b):
    return product(a, b, lambda x, y: x & ~y)


def is_empty(dfa):
    """수락 상태에 도달할 수 없으면 True"""
    return not (dfa.reachable() & dfa.accepting).any()


def is_universal(dfa):
    return is_empty(complement(dfa))


def equivalent(a, b):
    """L(a) = L(b) 여부 (대칭차의 공집합 판정)"""
    return is_empty(product(a, b, np.logical_xor))


def shortest_word(dfa):
    """
    길이-사전 순으로 가장 작은 수락 단어

    Returns:
        tuple 또는 None: 수락 단어가 없으면 None
    """
    parent = {dfa.start: None}
    queue = deque([dfa.start])
    while queue:
        state = queue.popleft()
        if dfa.accepting[state]:
            word = []
            while parent[state] is not None:
                state, symbol = parent[state]
                word.append(symbol)
            return tuple(reversed(word))
        for symbol, target in enumerate(dfa.delta[state].tolist()):
            if target not in parent:
                parent[target] = (state, symbol)
                queue.append(target)
    return None


def _edge_multiplicities(dfa):
    n, m = dfa.delta.shape
    codes = np.repeat(np.arange(n, dtype=np.int64), m) * n + dfa.delta.ravel()
    uniq, counts = np.unique(codes, return_counts=True)
    return uniq // n, uniq % n, counts


def count_words(dfa, length):
    """
    길이가 정확히 length 인 수락 단어 수 (임의 정밀도 정수)

    Args:
        dfa (Dfa): 오토마타
        length (int): 0 이상의 길이

    Returns:
        int: |L(dfa) ∩ Σ^length|
    """
    if length < 0:
        raise InputError("length must be non-negative")
    return count_series(dfa, length)[length]


def count_series(dfa, max_length):
    """길이 0..max_length 각각의 수락 단어 수 목록"""
    src, dst, mult = _edge_multiplicities(dfa)
    mult = mult.astype(object)
    vector = np.zeros(dfa.state_count, dtype=object)
    vector[:] = 0
    vector[dfa.start] = 1
    acc = np.flatnonzero(dfa.accepting)
    series = [int(vector[acc].sum())]
    for _ in range(max_length):
        nxt = np.zeros(dfa.state_count, dtype=object)
        nxt[:] = 0
        np.add.at(nxt, dst, vector[src] * mult)
        vector = nxt
        series.append(int(vector[acc].sum()))
    return series


def enumerate_words(dfa, max_length):
    """
    길이 max_length 이하의 수락 단어를 길이-사전 순으로 나열

    Args:
        dfa (Dfa): 오토마타
        max_length (int): 최대 길이

    Returns:
        list[tuple]: 수락 단어 목록
    """
    if max_length < 0:
        raise InputError("max_length must be non-negative")
    # live[r][s]: s 에서 정확히 r 걸음 만에 수락 가능
    live = [dfa.accepting]
    for _ in range(max_length):
        live.append(live[-1][dfa.delta].any(axis=1))
    delta = dfa.delta.tolist()
    words = []
    for length in range(max_length + 1):
        if not live[length][dfa.start]:
            continue
        stack = [(dfa.start, ())]
        while stack:
            state, prefix = stack.pop()
            remaining = length - len(prefix)
            if remaining == 0:
                words.append(prefix)
                continue
            step = live[remaining - 1]
            row = delta[state]
            for symbol in range(len(row) - 1, -1, -1):
                if step[row[symbol]]:
                    stack.append((row[symbol], prefix + (symbol,)))
    return words


def all_words(alphabet, max_length):
    """Σ^{≤max_length} 를 길이-사전 순으로"""
    return enumerate_words(Dfa.universal(alphabet), max_length)


__all__ = [
    'Alphabet', 'Dfa', 'accepts', 'accepts_batch', 'canonical', 'minimize', 'complement', 'product',
    'intersect', 'union', 'difference', 'is_empty', 'is_universal', 'equivalent',
    'shortest_word', 'count_words', 'count_series', 'enumerate_words', 'all_words',
]
