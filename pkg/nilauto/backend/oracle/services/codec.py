# oracle/services/codec.py
import logging

import numpy as np

from core.exceptions import OracleError
from .nil_element import E, H, NilElement

logger = logging.getLogger(__name__)


def _presentation_kind(presentation):
    kind = presentation.meta.get('kind')
    if kind not in ('ep', 'hp'):
        raise OracleError(f"presentation kind {kind!r} has no normal-form oracle")
    return kind, presentation.meta['p']


def _trim(values):
    values = list(values)
    while values and values[-1] == 0:
        values.pop()
    return values


def encode_ep(element):
    """z^v·ᾱ -> 단어 vα (α 의 끝 0 은 제거)"""
    if element.kind != E:
        raise OracleError(f"expected an E element, got {element.kind}")
    return (element.central[0],) + tuple(_trim(element.alpha))


def decode_ep(word, p, rank=None):
    word = tuple(word)
    if not word:
        raise OracleError("the empty word is not in the E_p domain")
    if len(word) > 1 and word[-1] == 0:
        raise OracleError(f"E_p word {word} ends in 0")
    if any(not 0 <= s < p for s in word):
        raise OracleError(f"E_p word {word} uses a symbol outside 0..{p - 1}")
    identity = NilElement.identity(E, p, rank)
    alpha = word[1:]
    if len(alpha) > identity.rank:
        raise OracleError(f"word {word} needs rank {len(alpha)}, oracle rank is {identity.rank}")
    padded = np.zeros(identity.rank, dtype=np.int64)
    padded[:len(alpha)] = alpha
    return NilElement._from_arrays(E, p, padded, np.int64(word[0]))


def encode_hp(element):
    """∏ z_k^{v_k}·ᾱ -> 두 트랙 단어 (코드 = α_k + p·v_k, 끝의 (0,0) 제거)"""
    if element.kind != H:
        raise OracleError(f"expected an H element, got {element.kind}")
    p = element.p
    codes = [a + p * v for a, v in zip(element.alpha, element.central)]
    return tuple(_trim(codes))


def decode_hp(word, p, rank=None):
    word = tuple(word)
    if any(not 0 <= s < p * p for s in word):
        raise OracleError(f"H_p word {word} uses a symbol outside 0..{p * p - 1}")
    if word and (word[-1] == 0 or word[0] >= p):
        raise OracleError(f"H_p word {word} is not in the domain")
    identity = NilElement.identity(H, p, rank)
    if len(word) > identity.rank:
        raise OracleError(f"word {word} needs rank {len(word)}, oracle rank is {identity.rank}")
    codes = np.zeros(identity.rank, dtype=np.int64)
    codes[:len(word)] = word
    return NilElement._from_arrays(H, p, codes % p, codes // p)


def encode(element, presentation):
    """원소를 presentation 의 정의역 단어로"""
    kind, p = _presentation_kind(presentation)
    if element.p != p:
        raise OracleError(f"element has p={element.p}, presentation has p={p}")
    return encode_ep(element) if kind == 'ep' else encode_hp(element)


def decode(word, presentation, rank=None):
    """presentation 의 정의역 단어를 원소로"""
    kind, p = _presentation_kind(presentation)
    if not presentation.contains(word):
        raise OracleError(f"word {presentation.format_word(word)!r} is not in the domain")
    return decode_ep(word, p, rank) if kind == 'ep' else decode_hp(word, p, rank)
