# core/services/loading.py
import logging
from pathlib import Path

from presentations.services.bundle import load_bundle
from presentations.services.registry import build_structure, structure_names

logger = logging.getLogger(__name__)


def load_presentation(source, p=None, order=None):
    """
    표준 구조 이름 또는 번들 경로로 표현을 얻는다

    레지스트리 이름이 먼저다. 같은 이름의 로컬 디렉터리는 ./ep 처럼 경로로 적어야 한다.

    Args:
        source (str): 레지스트리 이름, 아니면 번들 디렉터리/manifest 경로
        p (int): 레지스트리 이름일 때 소수
        order (int): power 의 순환군 위수

    Returns:
        Presentation
    """
    if source in structure_names():
        return build_structure(source, p=p, order=order)
    if Path(source).exists():
        return load_bundle(source)
    logger.debug(f"번들 경로가 아님, 레지스트리에서 찾음: {source}")
    return build_structure(source, p=p, order=order)
