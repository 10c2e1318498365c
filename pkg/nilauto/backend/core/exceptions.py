# core/exceptions.py


class NilautoError(Exception):
    """엔진 전체 공통 예외"""


class InputError(NilautoError, ValueError):
    """잘못된 기호, 단어, 파라미터"""


class AlphabetMismatchError(InputError):
    """이항 연산의 알파벳 불일치"""


class FormulaError(InputError):
    """수식 파싱/시그니처 오류 (미지의 관계, 인자 수, 자유/속박 변수 충돌, 열린 문장)"""


class InvalidPrimeError(InputError):
    def __init__(self, p=None):
        super().__init__("p must be an odd prime" if p is None else f"p must be an odd prime (got {p})")
        self.p = p


class PresentationError(InputError):
    """유효하지 않은 군 표, 동치가 아닌 등호 관계, 지원하지 않는 번들 종류"""


class CocycleError(NilautoError):
    """코사이클이 전함수가 아니거나 항등식을 만족하지 않음"""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OracleError(NilautoError):
    """오라클 원소 종류/p/계수 불일치, 계수 초과, 정의역 밖 단어"""


class AutomatonLimitError(NilautoError):
    """곱/부분집합 구성이 상한(NILAUTO_MAX_PRODUCT_STATES)을 넘음"""
