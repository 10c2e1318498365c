# core/views.py
import hashlib
import logging

from django.core.cache import cache
from rest_framework import status
from rest_framework.decorators import api_view
from rest_framework.response import Response

from automata.services.serialization import dumps
from core.exceptions import InputError
from core.services.census import run_census
from core.utils import get_setting
from logic.services.compiler import decide
from presentations.serializers import DecideRequestSerializer, EvalRequestSerializer
from presentations.services.registry import build_structure

logger = logging.getLogger(__name__)

MAX_CENSUS_LENGTH = 64


def _cache_key(kind, payload):
    digest = hashlib.sha256(dumps(payload)).hexdigest()
    return f"nilauto:{kind}:{digest}"


def _cached(kind, payload, compute):
    """계산 결과를 NILAUTO_CACHE_TIMEOUT 동안 보관"""
    key = _cache_key(kind, payload)
    data = cache.get(key)
    if data is None:
        data = compute()
        cache.set(key, data, get_setting('NILAUTO_CACHE_TIMEOUT'))
    return data


def _run(kind, payload, compute):
    try:
        return Response(_cached(kind, payload, compute))
    except InputError as e:
        logger.error(f"{kind} 요청 오류: {e}")
        return Response({"error": str(e)}, status=status.HTTP_400_BAD_REQUEST)
    except Exception as e:
        logger.exception(f"{kind} 처리 실패: {e}")
        return Response({"error": str(e)}, status=status.HTTP_500_INTERNAL_SERVER_ERROR)


@api_view(['POST'])
def eval_product(request):
    """두 정의역 단어의 곱"""
    serializer = EvalRequestSerializer(data=request.data)
    if not serializer.is_valid():
        return Response({"error": serializer.errors}, status=status.HTTP_400_BAD_REQUEST)
    data = serializer.validated_data

    def compute():
        presentation = build_structure(data['structure'], p=data.get('p'))
        z = presentation.evaluate(data['x'], data['y'])
        return {
            'structure': presentation.name,
            'x': data['x'],
            'y': data['y'],
            'z': None if z is None else presentation.format_word(z),
        }

    return _run('eval', dict(data), compute)


@api_view(['POST'])
def decide_sentence(request):
    """닫힌 문장의 참거짓"""
    serializer = DecideRequestSerializer(data=request.data)
    if not serializer.is_valid():
        return Response({"error": serializer.errors}, status=status.HTTP_400_BAD_REQUEST)
    data = serializer.validated_data

    def compute():
        presentation = build_structure(data['structure'], p=data.get('p'))
        return {
            'structure': presentation.name,
            'formula': data['formula'],
            'result': decide(data['formula'], presentation),
        }

    return _run('decide', dict(data), compute)


@api_view(['GET'])
def census(request, name):
    """정의역 조사표 (쿼리: max_len, p, c)"""
    try:
        max_length = int(request.query_params.get('max_len', 8))
        p = request.query_params.get('p')
        p = int(p) if p else None
        c = int(request.query_params.get('c', 1))
    except ValueError:
        return Response({"error": "max_len, p and c must be integers"}, status=status.HTTP_400_BAD_REQUEST)
    if max_length > MAX_CENSUS_LENGTH:
        return Response({"error": f"max_len is limited to {MAX_CENSUS_LENGTH}"}, status=status.HTTP_400_BAD_REQUEST)

    def compute():
        presentation = build_structure(name, p=p)
        return run_census(presentation, max_length, p=p or presentation.meta.get('p'), c=c).to_dict()

    return _run('census', {'name': name, 'max_len': max_length, 'p': p, 'c': c}, compute)
