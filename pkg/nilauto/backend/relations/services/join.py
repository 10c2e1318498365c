# relations/services/join.py
import logging
from collections import deque

import numpy as np

from automata.services.alphabet import Alphabet
from automata.services.dfa import Dfa, minimize
from core.exceptions import AlphabetMismatchError, AutomatonLimitError, InputError
from core.utils import check_state_limit
from .convolution import PaddedAlphabet, pack_digits, unpack_codes
from .relation import RelationAutomaton, well_formed

logger = logging.getLogger(__name__)

# 한 번에 펼치는 (부분집합 원소 × 열) 조합 수 상한
BLOCK_CELLS = 1 << 22
SENTINEL = np.iinfo(np.int64).max


class _Factor:
    """
    join 에 참여하는 관계 하나

    원래 전이표에 두 상태를 덧붙인다: F(모든 트랙이 끝난 뒤 수락) 와 X(죽음).
    전부 패드인 열(코드 = packed_size) 은 수락 상태에서 F 로, 그 밖에는 X 로 간다.
    수락 불가능한 상태로 가는 전이는 X 로 모은다.
    """

    def __init__(self, relation, tracks, digits, radix):
        dfa = relation.dfa
        n, m = dfa.delta.shape
        self.finished, self.dead = n, n + 1
        table = np.empty((n + 2, m + 1), dtype=np.int64)
        table[:n, :m] = dfa.delta
        table[:n, m] = np.where(dfa.accepting, self.finished, self.dead)
        table[self.finished] = self.dead
        table[self.finished, m] = self.finished
        table[self.dead] = self.dead
        accepting = np.append(dfa.accepting, [True, False])
        live = Dfa(Alphabet(m + 1), table, dfa.start, accepting).co_reachable()
        self.table = np.where(live[table], table, self.dead)
        self.accepting = accepting
        self.size = n + 2
        self.start = dfa.start if live[dfa.start] else self.dead
        # 전역 열 -> 이 관계가 읽는 열 (전부 패드면 m 이 되어 F/X 전이로 이어짐)
        self.code_map = pack_digits(digits[:, list(tracks)], radix)


def _factors_for(factors, variable_count, base):
    """트랙 검증 후 어떤 관계에도 나타나지 않는 변수에 전체 1 항 관계를 붙인다"""
    covered = set()
    result = []
    for relation, tracks in factors:
        tracks = tuple(tracks)
        if relation.base.size != base.size:
            raise AlphabetMismatchError("joined relations must share one base alphabet")
        if len(tracks) != relation.arity:
            raise InputError(f"relation of arity {relation.arity} given {len(tracks)} tracks")
        if any(not 0 <= t < variable_count for t in tracks):
            raise InputError(f"track assignment {tracks} out of range")
        covered.update(tracks)
        result.append((relation, tracks))
    universal = well_formed(base, 1)
    for variable in range(variable_count):
        if variable not in covered:
            result.append((universal, (variable,)))
    return result


def join(factors, out_arity, hidden=0, base=None):
    """
    관계들의 논리곱 후 숨은 트랙을 존재 한정

    결과는 out 변수 튜플 중에서, 숨은 변수에 적당한 단어를 넣으면 모든 관계가
    해당 트랙들의 튜플을 받는 것들의 집합이다. 숨은 단어는 out 단어보다 길 수 있다.

    Args:
        factors (list[tuple[RelationAutomaton, tuple[int]]]): (관계, 관계 트랙별 변수 번호)
        out_arity (int): 결과 트랙 수 (변수 0..out_arity-1)
        hidden (int): 숨은 변수 수 (변수 out_arity..out_arity+hidden-1)
        base (Alphabet): 기본 알파벳 (factors 가 비어 있을 때 필요)

    Returns:
        RelationAutomaton 또는 bool: out_arity 가 0 이면 진리값
    """
    if base is None:
        if not factors:
            raise InputError("join needs a base alphabet when no relations are given")
        base = factors[0][0].base
    variable_count = out_arity + hidden
    if variable_count == 0:
        return True
    radix = base.size + 1
    out_columns = radix ** out_arity
    hidden_columns = radix ** hidden
    digits = unpack_codes(np.arange(out_columns * hidden_columns), radix, variable_count)
    prepared = [
        _Factor(relation, tracks, digits, radix)
        for relation, tracks in _factors_for(factors, variable_count, base)
    ]
    for factor in prepared:
        # 전역 코드 = out 코드 + out_columns * hidden 코드
        factor.code_map = factor.code_map.reshape(hidden_columns, out_columns).T

    sizes = np.array([f.size for f in prepared], dtype=np.int64)
    if np.log2(sizes.astype(float)).sum() > 62:
        raise AutomatonLimitError(f"join of {len(prepared)} relations exceeds the tuple encoding range")
    strides = np.concatenate([[1], np.cumprod(sizes)[:-1]]).astype(np.int64)
    logger.debug(f"join 시작: 관계 {len(prepared)}개, out={out_arity}, hidden={hidden}, 상태 크기={sizes.tolist()}")

    tail = _TailAcceptance(prepared, strides, out_columns - 1, hidden_columns)
    start = tuple(f.start for f in prepared)
    if any(s == f.dead for s, f in zip(start, prepared)):
        start_code = None
    else:
        start_code = int(np.dot(start, strides))

    if out_arity == 0:
        return start_code is not None and tail(start_code)

    padded = PaddedAlphabet(base, out_arity)
    symbol_count = padded.packed_size
    empty = ()
    start_subset = (start_code,) if start_code is not None else empty
    index = {start_subset: 0}
    subsets = [start_subset]
    rows = []
    i = 0
    while i < len(subsets):
        current = subsets[i]
        # 빈 부분집합은 자기 자신으로만 간다
        row = np.full(symbol_count, i, dtype=np.int64)
        if current:
            targets = _successors(prepared, strides, np.array(current, dtype=np.int64), symbol_count, hidden_columns)
            for key, columns in targets:
                j = index.get(key)
                if j is None:
                    j = len(subsets)
                    index[key] = j
                    subsets.append(key)
                row[columns] = j
        rows.append(row)
        i += 1
        check_state_limit(len(subsets), 'join')
    accepting = np.array([any(tail(code) for code in subset) for subset in subsets], dtype=bool)
    dfa = minimize(Dfa(padded.alphabet, np.vstack(rows), 0, accepting))
    logger.debug(f"join 완료: 부분집합 {len(subsets)}개 -> 최소 {dfa.state_count} 상태")
    return RelationAutomaton(base, out_arity, dfa, trusted=True)


def _successors(prepared, strides, subset, symbol_count, hidden_columns):
    """
    부분집합의 out 열별 후속 부분집합

    Returns:
        list[tuple[tuple, np.ndarray]]: (후속 부분집합 키, 그 부분집합으로 가는 out 열 코드들)
    """
    states = [(subset // f_stride) % f.size for f, f_stride in zip(prepared, strides)]
    block = max(1, BLOCK_CELLS // max(1, len(subset) * hidden_columns))
    groups = {}
    for lo in range(0, symbol_count, block):
        hi = min(symbol_count, lo + block)
        codes = np.zeros((len(subset), hi - lo, hidden_columns), dtype=np.int64)
        dead = np.zeros(codes.shape, dtype=bool)
        for factor, stride, current in zip(prepared, strides, states):
            nxt = factor.table[current][:, factor.code_map[lo:hi]]
            dead |= nxt == factor.dead
            codes += nxt * stride
        codes[dead] = SENTINEL
        values = np.sort(codes.transpose(1, 0, 2).reshape(hi - lo, -1), axis=1)
        if values.shape[1] > 1:
            repeated = np.zeros(values.shape, dtype=bool)
            repeated[:, 1:] = values[:, 1:] == values[:, :-1]
            values[repeated] = SENTINEL
            values = np.sort(values, axis=1)
        width = int((values != SENTINEL).sum(axis=1).max(initial=0))
        values = values[:, :width]
        if width == 0:
            keys, inverse = np.zeros((1, 0), dtype=np.int64), np.zeros(hi - lo, dtype=np.int64)
        else:
            keys, inverse = np.unique(values, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        for k, key_row in enumerate(keys):
            key = tuple(v for v in key_row.tolist() if v != SENTINEL)
            columns = np.flatnonzero(inverse == k) + lo
            if key in groups:
                groups[key] = np.concatenate([groups[key], columns])
            else:
                groups[key] = columns
    return sorted(groups.items(), key=lambda item: int(item[1][0]))


class _TailAcceptance:
    """
    out 트랙이 모두 끝난 뒤 숨은 트랙만 남은 열로 모든 관계를 수락시킬 수 있는지

    결과는 튜플 코드별로 기억한다.
    """

    def __init__(self, prepared, strides, out_pad, hidden_columns):
        self.prepared = prepared
        self.strides = strides
        # 숨은 트랙도 전부 패드인 열은 존재하지 않는다
        self.columns = [f.code_map[out_pad, :hidden_columns - 1] for f in prepared]
        self.memo = {}

    def _accepting(self, code):
        return all(
            f.accepting[(code // stride) % f.size]
            for f, stride in zip(self.prepared, self.strides)
        )

    def _step(self, code):
        total = np.zeros(len(self.columns[0]), dtype=np.int64)
        dead = np.zeros(total.shape, dtype=bool)
        for f, stride, columns in zip(self.prepared, self.strides, self.columns):
            nxt = f.table[(code // stride) % f.size, columns]
            dead |= nxt == f.dead
            total += nxt * stride
        return np.unique(total[~dead]).tolist()

    def __call__(self, code):
        cached = self.memo.get(code)
        if cached is not None:
            return cached
        seen = {code}
        queue = deque([code])
        found = False
        while queue:
            current = queue.popleft()
            known = self.memo.get(current)
            if known or self._accepting(current):
                found = True
                break
            if known is False:
                continue
            for nxt in self._step(current) if self.columns[0].size else ():
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        if found:
            self.memo[code] = True
        else:
            # 탐색한 모든 튜플이 실패
            for visited in seen:
                self.memo[visited] = False
        return found


def project(relation, track):
    """
    한 트랙을 존재 한정으로 제거

    Args:
        relation (RelationAutomaton): 항 수 k >= 2 의 관계
        track (int): 제거할 트랙

    Returns:
        RelationAutomaton: 항 수 k-1
    """
    k = relation.arity
    if not 0 <= track < k:
        raise InputError(f"track {track} out of range for arity {k}")
    if k < 2:
        raise InputError("projection of a unary relation is a truth value; use join with out_arity=0")
    tracks = [j if j < track else (k - 1 if j == track else j - 1) for j in range(k)]
    return join([(relation, tracks)], k - 1, hidden=1)


def cylindrify(relation, position):
    """
    position 에 제약 없는 새 트랙을 끼워 넣는다

    Returns:
        RelationAutomaton: 항 수 k+1
    """
    k = relation.arity
    if not 0 <= position <= k:
        raise InputError(f"position {position} out of range for arity {k}")
    tracks = [j if j < position else j + 1 for j in range(k)]
    return join([(relation, tracks)], k + 1)


def product_of(languages, base):
    """1 항 관계들의 곱 L_0 × … × L_{k-1}"""
    return join([(language, (i,)) for i, language in enumerate(languages)], len(languages), base=base)
