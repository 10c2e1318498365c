# automata/services/alphabet.py
from dataclasses import dataclass

from core.exceptions import InputError


@dataclass(frozen=True)
class Alphabet:
    """
    정수 코드 알파벳 (기호는 0..size-1)

    labels 가 있으면 표시용 문자열로 사용한다.
    """
    size: int
    labels: tuple = None

    def __post_init__(self):
        if self.size < 1:
            raise InputError(f"alphabet size must be positive (got {self.size})")
        if self.labels is not None:
            object.__setattr__(self, 'labels', tuple(str(label) for label in self.labels))
            if len(self.labels) != self.size:
                raise InputError("alphabet labels must have exactly one entry per symbol")

    def label(self, symbol):
        if self.labels is None:
            return str(symbol)
        return self.labels[symbol]

    def check_word(self, word):
        """
        단어의 모든 기호가 범위 안에 있는지 확인

        Args:
            word (iterable[int]): 검사할 단어

        Returns:
            tuple: 튜플로 정규화된 단어
        """
        word = tuple(word)
        for symbol in word:
            if not isinstance(symbol, int) or symbol < 0 or symbol >= self.size:
                raise InputError(f"symbol {symbol!r} out of range for alphabet of size {self.size}")
        return word

    @property
    def _single_char(self):
        labels = self.labels or tuple(str(s) for s in range(self.size))
        return all(len(label) == 1 for label in labels)

    def format_word(self, word):
        """단어를 텍스트로 (한 글자 라벨은 이어 붙이고, 아니면 공백으로 구분)"""
        labels = [self.label(s) for s in word]
        if self._single_char:
            return ''.join(labels)
        return ' '.join(labels)

    def parse_word(self, text):
        """
        텍스트를 단어로 변환 (format_word 의 역)

        Args:
            text (str): 단어 텍스트, 빈 문자열은 빈 단어

        Returns:
            tuple: 기호 코드 튜플
        """
        text = text.strip()
        if not text or text in ('ε', 'eps'):
            return ()
        labels = self.labels or tuple(str(s) for s in range(self.size))
        index = {label: code for code, label in enumerate(labels)}
        parts = list(text) if self._single_char else text.split()
        try:
            return tuple(index[part] for part in parts)
        except KeyError as e:
            raise InputError(f"unknown symbol {e.args[0]!r} in word {text!r}") from None

    def to_dict(self):
        data = {'alphabet': self.size}
        if self.labels is not None:
            data['labels'] = list(self.labels)
        return data


def digits(size):
    """0..size-1 을 그대로 라벨로 쓰는 알파벳"""
    return Alphabet(size, tuple(str(s) for s in range(size)) if size <= 10 else None)
