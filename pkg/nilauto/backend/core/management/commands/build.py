# core/management/commands/build.py
import logging
from pathlib import Path

from core.management.base import NilautoCommand
from core.utils import get_setting
from presentations.services.bundle import save_bundle
from presentations.services.registry import build_structure, structure_names

logger = logging.getLogger(__name__)


class Command(NilautoCommand):
    help = "표준 표현을 만들어 번들 디렉터리로 저장합니다"

    def add_arguments(self, parser):
        parser.add_argument('name', help=f"구조 이름 ({', '.join(structure_names())})")
        parser.add_argument('--p', type=int, default=None, help="소수 p (ep, hp, ut3)")
        parser.add_argument('--order', type=int, default=None, help="순환군 위수 (power)")
        parser.add_argument('--out', default=None, help="출력 디렉터리 (기본값 NILAUTO_BUNDLE_DIR/<표현 이름>)")

    def handle_command(self, *args, **options):
        presentation = build_structure(options['name'], p=options['p'], order=options['order'])
        out = options['out'] or Path(get_setting('NILAUTO_BUNDLE_DIR')) / presentation.name.replace('/', '_')
        manifest = save_bundle(presentation, out)
        self.stdout.write(str(manifest))
