# core/management/commands/eval.py
from core.management.base import NilautoCommand, PropertyFailure
from core.services.loading import load_presentation


class Command(NilautoCommand):
    help = "Op(x, y, z) 를 만족하는 z 를 출력합니다"

    def add_arguments(self, parser):
        self.add_structure_arguments(parser)
        parser.add_argument('x', help="정의역 단어 (빈 단어는 \"\")")
        parser.add_argument('y', help="정의역 단어")

    def handle_command(self, *args, **options):
        presentation = load_presentation(options['structure'], options['p'], options['order'])
        z = presentation.evaluate(options['x'], options['y'])
        if z is None:
            raise PropertyFailure(f"Op has no value at ({options['x']!r}, {options['y']!r})")
        self.stdout.write(presentation.format_word(z))
