# core/management/commands/crosscheck.py
from automata.services.serialization import dumps
from core.management.base import NilautoCommand, PropertyFailure
from core.services.crosscheck import crosscheck
from core.services.loading import load_presentation


class Command(NilautoCommand):
    help = "FA 곱을 정규형 오라클과 비교합니다 (nat-add, ep, hp)"

    def add_arguments(self, parser):
        self.add_structure_arguments(parser)
        parser.add_argument('--max-len', type=int, default=3, help="단어 최대 길이 (기본값 3)")
        parser.add_argument('--workers', type=int, default=None, help="스레드 수 (기본값 NILAUTO_CROSSCHECK_WORKERS)")
        parser.add_argument('--sample', type=int, default=None, help="전수 대신 무작위 쌍 개수")
        parser.add_argument('--seed', type=int, default=None, help="표본 시드 (기본값 NILAUTO_SEED)")
        parser.add_argument('--format', choices=['text', 'json'], default='text')

    def handle_command(self, *args, **options):
        presentation = load_presentation(options['structure'], options['p'], options['order'])
        report = crosscheck(
            presentation, options['max_len'],
            workers=options['workers'], sample=options['sample'], seed=options['seed'],
        )
        if options['format'] == 'json':
            self.stdout.write(dumps(report.to_dict()).decode(), ending='')
        else:
            self.stdout.write(report.render(), ending='')
        if not report.passed:
            ce = report.counterexample
            raise PropertyFailure(f"crosscheck failed at x={ce.x!r} y={ce.y!r}")
