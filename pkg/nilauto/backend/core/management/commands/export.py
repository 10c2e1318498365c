# core/management/commands/export.py
import logging
from pathlib import Path

from automata.services.serialization import dfa_to_dict, dumps, to_dot
from core.management.base import NilautoCommand
from core.services.loading import load_presentation
from presentations.services.bundle import relation_to_dict

logger = logging.getLogger(__name__)

DOMAIN = 'domain'


class Command(NilautoCommand):
    help = "정의역 또는 관계 오토마타를 JSON/DOT 으로 내보냅니다"

    def add_arguments(self, parser):
        self.add_structure_arguments(parser)
        parser.add_argument('relation', help="관계 이름 (Op, Leq, is_e, ...) 또는 domain")
        parser.add_argument('--format', choices=['json', 'dot'], default='json')
        parser.add_argument('--out', default=None, help="출력 파일 (없으면 표준 출력)")

    def render(self, presentation, rel_name, fmt):
        graph_name = f"{presentation.name}.{rel_name}"
        if rel_name == DOMAIN:
            if fmt == 'json':
                return dumps(dfa_to_dict(presentation.domain)).decode()
            return "".join(to_dot(presentation.domain, name=graph_name))
        relation = presentation.relation(rel_name)
        if fmt == 'json':
            return dumps(relation_to_dict(relation)).decode()
        return "".join(to_dot(relation.dfa, symbol_label=relation.padded.label, name=graph_name))

    def handle_command(self, *args, **options):
        presentation = load_presentation(options['structure'], options['p'], options['order'])
        text = self.render(presentation, options['relation'], options['format'])
        if options['out']:
            path = Path(options['out'])
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding='utf-8')
            logger.info(f"내보내기 완료: {path}")
            self.stdout.write(str(path))
        else:
            self.stdout.write(text, ending='')
