# core/services/census.py
"""
정의역 단어 수 조사

자유군 쪽 수요 p^{n(n-1)/2} 와 표현이 길이 c·n 까지 공급하는 단어 수를 나란히 놓는다.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

from dataclasses_json import LetterCase, dataclass_json

from core.exceptions import InputError
from presentations.services.presentation import growth

logger = logging.getLogger(__name__)


def demand(p, n):
    """p^{n(n-1)/2}"""
    return p ** (n * (n - 1) // 2)


@dataclass_json(letter_case=LetterCase.CAMEL)
@dataclass
class CensusReport:
    structure: str
    max_length: int
    counts: List[int]
    cumulative: List[int]
    p: Optional[int] = None
    c: int = 1
    demand: List[int] = field(default_factory=list)
    crossover: Optional[int] = None

    def rows(self):
        """(길이, 개수, 누적, 수요) 행 (수요가 없으면 None)"""
        for length, (count, total) in enumerate(zip(self.counts, self.cumulative)):
            need = self.demand[length] if length < len(self.demand) else None
            yield length, count, total, need

    def render(self):
        """고정 폭 표"""
        header = f"{'n':>4} {'count':>14} {'cumulative':>16}"
        if self.p is not None:
            header += f" {'p^(n(n-1)/2)':>20}"
        lines = [f"# census {self.structure} (max length {self.max_length})", header]
        for length, count, total, need in self.rows():
            line = f"{length:>4} {count:>14} {total:>16}"
            if self.p is not None:
                line += f" {need:>20}"
            lines.append(line)
        if self.p is not None:
            if self.crossover is None:
                lines.append(f"# demand does not exceed supply at length {self.c}*n within max length")
            else:
                lines.append(f"# crossover (c={self.c}): n = {self.crossover}")
        return "\n".join(lines) + "\n"


def crossover(cumulative, p, c=1):
    """
    p^{n(n-1)/2} 가 길이 c·n 이하 단어 수를 처음 넘는 n

    Returns:
        int 또는 None: 조사한 길이 안에서 넘지 않으면 None
    """
    n = 1
    while c * n < len(cumulative):
        if demand(p, n) > cumulative[c * n]:
            return n
        n += 1
    return None


def run_census(presentation, max_length, p=None, c=1):
    """
    Args:
        presentation (Presentation): 조사할 표현
        max_length (int): 최대 길이 (1 이상)
        p (int): 주어지면 수요 열과 교차점을 함께 계산
        c (int): 공급 길이 배수

    Returns:
        CensusReport
    """
    if max_length < 1:
        raise InputError("max length must be at least 1")
    if c < 1:
        raise InputError("c must be a positive integer")
    logger.info(f"조사 시작: {presentation.name} (최대 길이 {max_length})")
    counts, cumulative = growth(presentation, max_length)
    report = CensusReport(presentation.name, max_length, counts, cumulative, p=p, c=c)
    if p is not None:
        report.demand = [demand(p, n) for n in range(max_length + 1)]
        report.crossover = crossover(cumulative, p, c)
    logger.info(f"조사 완료: 누적 {cumulative[-1]}, 교차점 {report.crossover}")
    return report
