# presentations/services/bundle.py
"""
표현 번들: manifest.json 과 오토마타 JSON 파일들이 든 디렉터리
"""
import logging
from pathlib import Path

from automata.services.alphabet import Alphabet
from automata.services.serialization import dfa_from_dict, dfa_to_dict, dumps, loads
from core.exceptions import InputError, PresentationError
from relations.services.relation import RelationAutomaton
from presentations.serializers import BUNDLE_FORMAT, ManifestSerializer
from .presentation import Presentation

logger = logging.getLogger(__name__)

MANIFEST = 'manifest.json'
RESERVED_META = ('kind', 'trackOrder')


def relation_to_dict(relation):
    data = dfa_to_dict(relation.dfa)
    data.update({'arity': relation.arity, 'baseAlphabet': relation.base.size})
    return data


def relation_from_dict(data, base):
    """
    Raises:
        PresentationError: 기본 알파벳이 번들과 다름
    """
    if int(data.get('baseAlphabet', -1)) != base.size:
        raise PresentationError(f"relation file is over base alphabet {data.get('baseAlphabet')}, expected {base.size}")
    try:
        arity = int(data['arity'])
    except (KeyError, TypeError, ValueError):
        raise InputError("relation file has no arity") from None
    return RelationAutomaton(base, arity, dfa_from_dict(data), trusted=True)


def save_bundle(presentation, directory):
    """
    표현을 번들 디렉터리로 저장

    Args:
        presentation (Presentation): 저장할 표현
        directory (str 또는 Path): 대상 디렉터리 (없으면 만든다)

    Returns:
        Path: manifest 경로
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    fmt = presentation.format_word
    (directory / 'domain.json').write_bytes(dumps(dfa_to_dict(presentation.domain)))
    relations = {}
    for name, relation in sorted(presentation.relations.items()):
        filename = f"{name}.json"
        (directory / filename).write_bytes(dumps(relation_to_dict(relation)))
        relations[name] = {'file': filename, 'arity': relation.arity}
    manifest = {
        'format': BUNDLE_FORMAT,
        'name': presentation.name,
        'kind': presentation.meta.get('kind', 'custom'),
        'params': {k: v for k, v in presentation.meta.items() if k not in RESERVED_META},
        'alphabet': presentation.base.size,
        'labels': list(presentation.base.labels) if presentation.base.labels else None,
        'neutralWord': fmt(presentation.neutral_word),
        'domain': 'domain.json',
        'relations': relations,
        'equality': None,
        'constants': {k: fmt(w) for k, w in presentation.constants.items() if k != 'e'},
    }
    if presentation.equality is not None:
        (directory / 'equality.json').write_bytes(dumps(relation_to_dict(presentation.equality)))
        manifest['equality'] = 'equality.json'
    if 'trackOrder' in presentation.meta:
        manifest['trackOrder'] = presentation.meta['trackOrder']
    path = directory / MANIFEST
    path.write_bytes(dumps(manifest))
    logger.info(f"번들 저장: {path} (관계 {sorted(relations)})")
    return path


def _read_json(path):
    try:
        return loads(Path(path).read_bytes())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None


def load_manifest(directory):
    """
    manifest.json 을 읽고 검증

    Raises:
        InputError: 파일이 없거나 형식이 잘못됨
    """
    directory = Path(directory)
    path = directory / MANIFEST if directory.is_dir() else directory
    serializer = ManifestSerializer(data=_read_json(path))
    if not serializer.is_valid():
        raise InputError(f"invalid bundle manifest {path}: {dict(serializer.errors)}")
    return path.parent, serializer.validated_data


def load_bundle(directory):
    """
    번들 디렉터리에서 표현을 복원

    Args:
        directory (str 또는 Path): 번들 디렉터리 또는 manifest 경로

    Returns:
        Presentation: 저장된 관계는 이미 제한된 것으로 본다
    """
    root, manifest = load_manifest(directory)
    base = Alphabet(manifest['alphabet'], manifest.get('labels'))
    domain = dfa_from_dict(_read_json(root / manifest['domain']))
    relations = {}
    for name, entry in manifest['relations'].items():
        relation = relation_from_dict(_read_json(root / entry['file']), base)
        if relation.arity != entry['arity']:
            raise PresentationError(f"relation {name}: manifest arity {entry['arity']} != file arity {relation.arity}")
        relations[name] = relation
    equality = None
    if manifest.get('equality'):
        equality = relation_from_dict(_read_json(root / manifest['equality']), base)
    meta = dict(manifest['params'])
    meta['kind'] = manifest['kind']
    if manifest.get('trackOrder'):
        meta['trackOrder'] = list(manifest['trackOrder'])
    presentation = Presentation(
        manifest['name'], base, domain, relations, base.parse_word(manifest['neutralWord']),
        equality=equality,
        constants={k: base.parse_word(v) for k, v in manifest['constants'].items()},
        meta=meta,
        restricted=True,
    )
    logger.info(f"번들 로드: {root} ({presentation!r})")
    return presentation
