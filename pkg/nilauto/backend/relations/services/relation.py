# relations/services/relation.py
import logging
from functools import lru_cache

import numpy as np

from automata.services.alphabet import Alphabet
from automata.services.dfa import Dfa, accepts, accepts_batch, difference, intersect, minimize, union
from core.exceptions import AlphabetMismatchError, InputError
from .convolution import PaddedAlphabet, convolve, convolve_batch, pack_digits, unpack_codes

logger = logging.getLogger(__name__)


class RelationAutomaton:
    """
    k 항 정규 관계: 합성곱 알파벳 위의 DFA

    언어는 항상 올바른 합성곱(패드 뒤에 트랙이 다시 시작하지 않음)에 포함된다.
    """

    __slots__ = ('base', 'arity', 'dfa')

    def __init__(self, base, arity, dfa, trusted=False):
        padded = PaddedAlphabet(base, arity)
        if dfa.alphabet.size != padded.packed_size:
            raise AlphabetMismatchError(
                f"relation automaton must read the {arity}-track alphabet of size {padded.packed_size}"
            )
        if not trusted:
            dfa = minimize(intersect(dfa, well_formed(base, arity).dfa))
        self.base = base
        self.arity = arity
        self.dfa = dfa

    @property
    def padded(self):
        return PaddedAlphabet(self.base, self.arity)

    def __repr__(self):
        return f"RelationAutomaton(arity={self.arity}, base={self.base.size}, states={self.dfa.state_count})"

    def contains(self, words):
        """튜플 (w_1..w_k) 가 관계에 속하는지"""
        if len(words) != self.arity:
            raise InputError(f"expected {self.arity} words, got {len(words)}")
        return accepts(self.dfa, convolve(list(words), self.base))

    def contains_batch(self, tracks):
        """
        행마다 튜플 하나씩, 여러 튜플의 소속 여부

        Args:
            tracks (list[ndarray]): 트랙별 word_matrix (행 수가 같아야 함)

        Returns:
            ndarray[bool]
        """
        if len(tracks) != self.arity:
            raise InputError(f"expected {self.arity} tracks, got {len(tracks)}")
        if len({t.shape[0] for t in tracks}) > 1:
            raise InputError("tracks must have the same number of rows")
        return accepts_batch(self.dfa, convolve_batch(tracks, self.base))


def _column_table(base, arity):
    padded = PaddedAlphabet(base, arity)
    return padded, unpack_codes(np.arange(padded.packed_size), padded.radix, arity)


@lru_cache(maxsize=64)
def well_formed(base, arity):
    """
    올바른 합성곱 언어: 각 트랙은 기본 단어 뒤에 패드만 온다

    상태는 이미 끝난 트랙들의 비트마스크다.
    """
    padded, digits = _column_table(base, arity)
    is_pad = digits == padded.pad
    pad_mask = (is_pad * (1 << np.arange(arity))).sum(axis=1)
    masks = np.arange(1 << arity, dtype=np.int64)
    # 끝난 트랙에 기호가 오면 거부 (싱크 = 1 << arity)
    resumed = (masks[:, None] & ~pad_mask[None, :]) != 0
    delta = np.where(resumed, 1 << arity, masks[:, None] | pad_mask[None, :])
    sink_row = np.full((1, padded.packed_size), 1 << arity, dtype=np.int64)
    delta = np.vstack([delta, sink_row])
    accepting = np.ones(delta.shape[0], dtype=bool)
    accepting[-1] = False
    dfa = minimize(Dfa(padded.alphabet, delta, 0, accepting))
    return RelationAutomaton(base, arity, dfa, trusted=True)


def scan_relation(base, arity, initial, step, accept):
    """
    열 단위 스캔 함수로 관계 오토마타를 생성

    Args:
        base (Alphabet): 기본 알파벳
        arity (int): 트랙 수
        initial: 초기 메모리 상태 (해시 가능)
        step (callable): (state, column) -> state 또는 None; column 은 패드를 None 으로 둔 튜플
        accept (callable): state -> bool

    Returns:
        RelationAutomaton: 올바른 합성곱과 교집합을 취하고 최소화한 관계
    """
    padded, digits = _column_table(base, arity)
    columns = [tuple(None if d == padded.pad else int(d) for d in row) for row in digits.tolist()]

    def packed_step(state, code):
        return step(state, columns[code])

    dfa = Dfa.from_function(padded.alphabet, initial, packed_step, accept)
    logger.debug(f"스캔 관계 생성: arity={arity}, base={base.size}, 상태={dfa.state_count}")
    return RelationAutomaton(base, arity, dfa)


def unary(base, dfa):
    """기본 알파벳 위의 DFA 를 1 항 관계로 (1 트랙 알파벳 = 기본 알파벳)"""
    if dfa.alphabet.size != base.size:
        raise AlphabetMismatchError("unary relation must read the base alphabet")
    return RelationAutomaton(base, 1, Dfa(PaddedAlphabet(base, 1).alphabet, dfa.delta, dfa.start, dfa.accepting), trusted=True)


def as_language(relation):
    """1 항 관계를 기본 알파벳 위의 DFA 로"""
    if relation.arity != 1:
        raise InputError(f"expected a unary relation, got arity {relation.arity}")
    dfa = relation.dfa
    return Dfa(relation.base, dfa.delta, dfa.start, dfa.accepting)


@lru_cache(maxsize=16)
def equality_relation(base):
    """{(w, w)}"""
    return scan_relation(base, 2, 0, lambda s, col: s if col[0] == col[1] else None, lambda s: True)


def _lex_step(state, column):
    u, v = column
    if state == 'shorter':
        return 'shorter' if u is None else None
    if v is None:
        return None
    if u is None:
        return 'shorter'
    if state == 'eq':
        return 'eq' if u == v else ('lt' if u < v else 'gt')
    return state


@lru_cache(maxsize=16)
def lex_len_order(base):
    """
    길이-사전 순서 ≤_L (반사적)

    |u| < |v| 이거나, 길이가 같고 기호 코드 순으로 u ≤ v.
    """
    return scan_relation(base, 2, 'eq', _lex_step, lambda s: s in ('eq', 'lt', 'shorter'))


def check_same(r1, r2):
    if r1.base.size != r2.base.size or r1.arity != r2.arity:
        raise AlphabetMismatchError(
            f"relations differ in base/arity ({r1.base.size}/{r1.arity} vs {r2.base.size}/{r2.arity})"
        )


def intersect_relations(r1, r2):
    check_same(r1, r2)
    return RelationAutomaton(r1.base, r1.arity, minimize(intersect(r1.dfa, r2.dfa)), trusted=True)


def union_relations(r1, r2):
    check_same(r1, r2)
    return RelationAutomaton(r1.base, r1.arity, minimize(union(r1.dfa, r2.dfa)), trusted=True)


def negate(relation, within=None):
    """
    올바른 합성곱(또는 within) 에 대한 여관계

    Args:
        relation (RelationAutomaton): 관계
        within (RelationAutomaton): 기준 관계, 없으면 well_formed
    """
    within = within or well_formed(relation.base, relation.arity)
    check_same(relation, within)
    return RelationAutomaton(relation.base, relation.arity, minimize(difference(within.dfa, relation.dfa)), trusted=True)


def reorder(relation, permutation):
    """
    트랙 재배열: 결과의 i 번째 트랙은 원래의 permutation[i] 번째 트랙

    Args:
        relation (RelationAutomaton): 관계
        permutation (sequence[int]): 0..k-1 의 순열

    Returns:
        RelationAutomaton: {(w_{π0}, …, w_{π(k-1)}) : (w_0..w_{k-1}) ∈ relation}
    """
    permutation = tuple(permutation)
    if sorted(permutation) != list(range(relation.arity)):
        raise InputError(f"invalid permutation {permutation} for arity {relation.arity}")
    padded = relation.padded
    new_digits = unpack_codes(np.arange(padded.packed_size), padded.radix, relation.arity)
    old_digits = np.empty_like(new_digits)
    old_digits[:, list(permutation)] = new_digits
    symbol_map = pack_digits(old_digits, padded.radix)
    dfa = relation.dfa
    permuted = Dfa(dfa.alphabet, dfa.delta[:, symbol_map], dfa.start, dfa.accepting)
    return RelationAutomaton(relation.base, relation.arity, minimize(permuted), trusted=True)


def rebase(relation, base):
    """
    더 큰 기본 알파벳 위의 같은 관계 (기호 코드는 그대로, 새 기호는 거부)

    Args:
        relation (RelationAutomaton): 관계
        base (Alphabet): relation.base.size 이상 크기의 알파벳
    """
    if base.size < relation.base.size:
        raise AlphabetMismatchError("rebase target alphabet is smaller than the source")
    old, k = relation.padded, relation.arity
    new = PaddedAlphabet(base, k)
    digits = unpack_codes(np.arange(new.packed_size), new.radix, k)
    invalid = ((digits >= old.base.size) & (digits != new.pad)).any(axis=1)
    digits = np.where(digits == new.pad, old.pad, digits)
    symbol_map = np.where(invalid, old.packed_size, pack_digits(np.minimum(digits, old.pad), old.radix))
    dfa = relation.dfa
    sink = dfa.state_count
    extended = np.hstack([dfa.delta, np.full((sink, 1), sink, dtype=np.int64)])
    extended = np.vstack([extended, np.full((1, old.packed_size + 1), sink, dtype=np.int64)])
    accepting = np.append(dfa.accepting, False)
    rebased = Dfa(new.alphabet, extended[:, symbol_map], dfa.start, accepting)
    return RelationAutomaton(base, k, minimize(rebased), trusted=True)


def regroup(relation, group_size):
    """
    인접한 group_size 개 트랙을 하나의 트랙으로 묶어 읽는다

    트랙 순서 (u0, a0, u1, a1, …) 의 2k 항 관계는 기본 알파벳이 합성곱 쌍 알파벳인
    k 항 관계와 같은 DFA 를 가진다 (열 코드가 정확히 일치).
    """
    if relation.arity % group_size:
        raise InputError(f"arity {relation.arity} is not a multiple of {group_size}")
    inner = PaddedAlphabet(relation.base, group_size)
    grouped_base = Alphabet(inner.packed_size)
    arity = relation.arity // group_size
    outer = PaddedAlphabet(grouped_base, arity)
    dfa = relation.dfa
    return RelationAutomaton(
        grouped_base, arity, Dfa(outer.alphabet, dfa.delta, dfa.start, dfa.accepting), trusted=True
    )


def solve(relation, fixed, free_track):
    """
    나머지 트랙이 주어졌을 때 free_track 의 ≤_L 최소 해

    Args:
        relation (RelationAutomaton): 관계
        fixed (dict[int, tuple]): 트랙 -> 단어 (free_track 제외 전부)
        free_track (int): 풀 트랙

    Returns:
        tuple 또는 None: 가장 작은 해, 없으면 None
    """
    k, padded = relation.arity, relation.padded
    if set(fixed) != set(range(k)) - {free_track}:
        raise InputError("fixed words must cover every track except the free one")
    fixed = {t: relation.base.check_word(w) for t, w in fixed.items()}
    span = max((len(w) for w in fixed.values()), default=0)
    delta, accepting = relation.dfa.delta, relation.dfa.accepting
    powers = [padded.radix ** i for i in range(k)]
    pad = padded.pad

    def fixed_code(position):
        return sum(
            (w[position] if position < len(w) else pad) * powers[t]
            for t, w in fixed.items()
        )

    for length in range(span + relation.dfa.state_count + 2):
        total = max(span, length)
        frontier = {relation.dfa.start: ()}
        for position in range(total):
            base_code = fixed_code(position)
            choices = range(relation.base.size) if position < length else (pad,)
            nxt = {}
            for state, prefix in sorted(frontier.items(), key=lambda item: item[1]):
                for symbol in choices:
                    code = base_code + symbol * powers[free_track]
                    if code == padded.packed_size:
                        continue
                    target = int(delta[state, code])
                    if target not in nxt:
                        nxt[target] = prefix + ((symbol,) if symbol != pad else ())
            frontier = nxt
        found = [prefix for state, prefix in frontier.items() if accepting[state]]
        if found:
            return min(found)
    return None
