# core/management/commands/census.py
from automata.services.serialization import dumps
from core.management.base import NilautoCommand
from core.services.census import run_census
from core.services.loading import load_presentation


class Command(NilautoCommand):
    help = "정의역 단어 수와 자유군 수요 p^(n(n-1)/2) 를 비교합니다"

    def add_arguments(self, parser):
        self.add_structure_arguments(parser)
        parser.add_argument('--max-len', type=int, default=8, help="최대 길이 (기본값 8)")
        parser.add_argument('--c', type=int, default=1, help="공급 길이 배수 c (길이 c·n 까지의 단어와 비교)")
        parser.add_argument('--format', choices=['text', 'json'], default='text')

    def handle_command(self, *args, **options):
        presentation = load_presentation(options['structure'], options['p'], options['order'])
        p = options['p'] or presentation.meta.get('p')
        report = run_census(presentation, options['max_len'], p=p, c=options['c'])
        if options['format'] == 'json':
            self.stdout.write(dumps(report.to_dict()).decode(), ending='')
        else:
            self.stdout.write(report.render(), ending='')
