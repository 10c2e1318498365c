# oracle/services/integers.py
from core.exceptions import OracleError


def encode_nat(n):
    """자연수 -> LSB 우선 이진 단어 (0 은 빈 단어)"""
    if n < 0:
        raise OracleError(f"{n} is not a natural number")
    bits = []
    while n:
        n, bit = divmod(n, 2)
        bits.append(bit)
    return tuple(bits)


def decode_nat(word):
    word = tuple(word)
    if word and word[-1] != 1:
        raise OracleError(f"binary word {word} must end in 1")
    return sum(bit << i for i, bit in enumerate(word))


def encode_int(n):
    """정수 -> 부호 기호(0 = +, 1 = −) 뒤에 절댓값의 LSB 우선 이진 단어"""
    return (1 if n < 0 else 0,) + encode_nat(abs(n))


def decode_int(word):
    word = tuple(word)
    if not word:
        raise OracleError("integer words start with a sign symbol")
    magnitude = decode_nat(word[1:])
    if word[0] == 1 and magnitude == 0:
        raise OracleError("negative zero is not a valid integer word")
    return -magnitude if word[0] else magnitude
