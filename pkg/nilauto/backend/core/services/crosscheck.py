# core/services/crosscheck.py
"""
FA 곱과 정규형 오라클의 전수 비교

정의역 단어 쌍 (x, y) 를 길이-사전 순으로 번호 매기고 청크별로 스레드 풀에서 돌린다.
반례는 순서상 가장 앞선 쌍 하나만 보고한다.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from dataclasses_json import LetterCase, dataclass_json

from automata.services.dfa import enumerate_words
from core.exceptions import InputError, PresentationError
from core.utils import get_setting
from oracle.services.codec import decode_ep, decode_hp, encode_ep, encode_hp
from oracle.services.integers import decode_nat, encode_nat
from oracle.services.nil_element import multiply
from relations.services.convolution import word_matrix

logger = logging.getLogger(__name__)

ORACLE_KINDS = ('nat-add', 'ep', 'hp')


@dataclass_json(letter_case=LetterCase.CAMEL)
@dataclass
class Counterexample:
    x: str
    y: str
    expected: str
    actual: Optional[str]


@dataclass_json(letter_case=LetterCase.CAMEL)
@dataclass
class CrosscheckReport:
    structure: str
    kind: str
    max_length: int
    pairs_checked: int
    passed: bool
    counterexample: Optional[Counterexample] = None

    def render(self):
        lines = [
            f"# crosscheck {self.structure} ({self.kind}, max length {self.max_length})",
            f"pairs checked: {self.pairs_checked}",
        ]
        if self.passed:
            lines.append("result: pass")
        else:
            ce = self.counterexample
            lines.append("result: FAIL")
            lines.append(f"counterexample: x={ce.x!r} y={ce.y!r} expected={ce.expected!r} got={ce.actual!r}")
        return "\n".join(lines) + "\n"


def oracle_product(presentation, max_length):
    """
    표현 종류에 맞는 오라클 곱 (단어 두 개 -> 단어)

    Raises:
        PresentationError: 오라클이 없는 종류
    """
    kind = presentation.meta.get('kind')
    if kind == 'nat-add':
        return lambda x, y: encode_nat(decode_nat(x) + decode_nat(y))
    if kind in ('ep', 'hp'):
        p = presentation.meta['p']
        rank = max(get_setting('NILAUTO_ORACLE_RANK'), max_length)
        decode, encode = (decode_ep, encode_ep) if kind == 'ep' else (decode_hp, encode_hp)
        return lambda x, y: encode(multiply(decode(x, p, rank), decode(y, p, rank)))
    raise PresentationError(
        f"crosscheck supports {', '.join(ORACLE_KINDS)}; {presentation.name} has kind {kind!r}"
    )


def _expected_tracks(presentation, words, oracle):
    """
    (x 인덱스, y 인덱스) 배열 -> 기대 곱 z 의 트랙 행렬 함수

    nat-add 는 정수 덧셈을 배열로 계산하고, 나머지는 쌍마다 오라클을 부른다.
    """
    pad = presentation.base.size
    width = max(len(w) for w in words) + 1
    if presentation.meta['kind'] == 'nat-add' and width < 63:
        values = np.array([decode_nat(w) for w in words], dtype=np.int64)
        shifts = np.arange(width, dtype=np.int64)

        def expected(xi, yj):
            high = (values[xi] + values[yj])[:, None] >> shifts[None, :]
            return np.where(high > 0, high & 1, pad)
        return expected

    def expected(xi, yj):
        return word_matrix([oracle(words[i], words[j]) for i, j in zip(xi.tolist(), yj.tolist())], pad)
    return expected


def _first_failure(op, matrix, expected, indices, count):
    """청크 안에서 순서상 첫 실패 쌍의 (x 인덱스, y 인덱스)"""
    xi, yj = np.divmod(indices, count)
    ok = op.contains_batch([matrix[xi], matrix[yj], expected(xi, yj)])
    if ok.all():
        return None
    k = int(np.argmin(ok))
    return int(xi[k]), int(yj[k])


def _sample_indices(count, sample, seed):
    """정렬된 표본 쌍 번호 (i·count + j)"""
    rng = np.random.default_rng(seed)
    total = count ** 2
    return np.sort(rng.choice(total, size=min(sample, total), replace=False))


def crosscheck(presentation, max_length, workers=None, sample=None, seed=None):
    """
    Op 가 (x, y, 오라클 곱) 을 모두 포함하는지 확인

    Op 는 함수의 그래프이므로 소속만 보면 된다. 쌍은 청크로 묶어 합성곱 행렬 위에서 한 번에 돌린다.

    Args:
        presentation (Presentation): nat-add, ep, hp 종류의 표현
        max_length (int): 비교할 단어의 최대 길이
        workers (int): 스레드 수 (기본값 NILAUTO_CROSSCHECK_WORKERS)
        sample (int): 주어지면 전수 대신 무작위 쌍 sample 개만 비교
        seed (int): 표본 추출 시드 (기본값 NILAUTO_SEED)

    Returns:
        CrosscheckReport: 실패 시 (x, y) 순서상 첫 반례 포함
    """
    if max_length < 0:
        raise InputError("max length must be non-negative")
    oracle = oracle_product(presentation, max_length)
    words = enumerate_words(presentation.domain, max_length)
    count = len(words)
    if sample:
        picks = _sample_indices(count, sample, get_setting('NILAUTO_SEED') if seed is None else seed)
        pairs = len(picks)
    else:
        picks, pairs = None, count ** 2
    chunk = get_setting('NILAUTO_CROSSCHECK_CHUNK')
    workers = workers or get_setting('NILAUTO_CROSSCHECK_WORKERS')
    op = presentation.relation('Op')
    matrix = word_matrix(words, presentation.base.size)
    expected = _expected_tracks(presentation, words, oracle)

    def check(start):
        stop = min(start + chunk, pairs)
        indices = np.arange(start, stop, dtype=np.int64) if picks is None else picks[start:stop]
        return _first_failure(op, matrix, expected, indices, count)

    logger.info(f"크로스체크 시작: {presentation.name}, 쌍 {pairs}개, 스레드 {workers}")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        failure = next((f for f in pool.map(check, range(0, pairs, chunk)) if f is not None), None)
    report = CrosscheckReport(
        presentation.name, presentation.meta['kind'], max_length, pairs, passed=failure is None,
    )
    if failure is not None:
        x, y = words[failure[0]], words[failure[1]]
        actual = presentation.evaluate(x, y)
        fmt = presentation.format_word
        report.counterexample = Counterexample(
            fmt(x), fmt(y), fmt(oracle(x, y)), None if actual is None else fmt(actual),
        )
        logger.warning(f"크로스체크 반례: {report.counterexample}")
    logger.info(f"크로스체크 완료: {presentation.name} {'통과' if report.passed else '실패'}")
    return report
