# core/management/commands/decide.py
from core.management.base import NilautoCommand
from core.services.loading import load_presentation
from logic.services.compiler import decide


class Command(NilautoCommand):
    help = "닫힌 1차 논리식의 참거짓을 출력합니다 (true/false)"

    def add_arguments(self, parser):
        self.add_structure_arguments(parser)
        parser.add_argument('formula', help='s-식 문장, 예: "(forall (x y) (exists z (Op x y z)))"')

    def handle_command(self, *args, **options):
        presentation = load_presentation(options['structure'], options['p'], options['order'])
        self.stdout.write("true" if decide(options['formula'], presentation) else "false")
