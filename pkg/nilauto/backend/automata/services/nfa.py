# automata/services/nfa.py
import logging

import numpy as np

from core.exceptions import InputError
from core.utils import check_state_limit
from .dfa import Dfa

logger = logging.getLogger(__name__)


class Nfa:
    """
    엡실론 전이 없는 비결정적 유한 오토마타

    delta 는 (상태, 기호) -> 상태 집합 매핑이며, 없는 키는 빈 집합으로 본다.
    """

    def __init__(self, alphabet, state_count, start_set, accepting, delta):
        self.alphabet = alphabet
        self.state_count = int(state_count)
        self.start_set = frozenset(start_set)
        self.accepting = frozenset(accepting)
        self.delta = {}
        for (state, symbol), targets in delta.items():
            if not 0 <= state < self.state_count or not 0 <= symbol < alphabet.size:
                raise InputError(f"transition key ({state},{symbol}) out of range")
            targets = frozenset(targets)
            if any(not 0 <= t < self.state_count for t in targets):
                raise InputError(f"transition ({state},{symbol}) refers to an unknown state")
            if targets:
                self.delta[(state, symbol)] = targets
        if any(not 0 <= s < self.state_count for s in self.start_set | self.accepting):
            raise InputError("start/accepting state out of range")

    @classmethod
    def from_dfa(cls, dfa):
        delta = {
            (s, a): {int(dfa.delta[s, a])}
            for s in range(dfa.state_count)
            for a in range(dfa.alphabet.size)
        }
        return cls(dfa.alphabet, dfa.state_count, {dfa.start}, dfa.accepting_states, delta)

    def step(self, states, symbol):
        result = set()
        for state in states:
            result |= self.delta.get((state, symbol), frozenset())
        return frozenset(result)

    def accepts(self, word):
        """부분집합 시뮬레이션으로 단어 수락 여부 판정"""
        word = self.alphabet.check_word(word)
        states = self.start_set
        for symbol in word:
            states = self.step(states, symbol)
        return bool(states & self.accepting)


def determinize(nfa):
    """
    부분집합 구성으로 같은 언어의 완전 DFA 생성

    공집합은 싱크 상태가 된다.

    Args:
        nfa (Nfa): 비결정적 오토마타

    Returns:
        Dfa: L(result) = L(nfa)
    """
    start = nfa.start_set
    index = {start: 0}
    subsets = [start]
    rows = []
    i = 0
    while i < len(subsets):
        current = subsets[i]
        row = []
        for symbol in range(nfa.alphabet.size):
            target = nfa.step(current, symbol)
            j = index.get(target)
            if j is None:
                j = len(subsets)
                index[target] = j
                subsets.append(target)
            row.append(j)
        rows.append(row)
        i += 1
        check_state_limit(len(subsets), 'determinize')
    accepting = [k for k, subset in enumerate(subsets) if subset & nfa.accepting]
    logger.debug(f"부분집합 구성: {nfa.state_count} -> {len(subsets)} 상태")
    return Dfa(nfa.alphabet, np.array(rows, dtype=np.int64), 0, accepting)
