# core/management/base.py
"""
nilauto 명령 공통 부분

종료 코드: 0 성공, 1 성질 검사 실패, 2 사용법/입력 오류
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import CocycleError, InputError, NilautoError, OracleError

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2


class PropertyFailure(CommandError):
    """검사가 반례를 찾음 (출력은 이미 끝난 상태)"""

    def __init__(self, message):
        super().__init__(message, returncode=EXIT_FAILURE)


class NilautoCommand(BaseCommand):
    """handle_command 에서 난 엔진 예외를 CommandError 로 바꾼다"""

    def add_structure_arguments(self, parser):
        parser.add_argument('structure', help="번들 디렉터리 또는 구조 이름 (nat-add, ep, hp, power, ut3, example12, integers)")
        parser.add_argument('--p', type=int, default=None, help="소수 p (ep, hp, ut3)")
        parser.add_argument('--order', type=int, default=None, help="순환군 위수 (power)")

    def handle(self, *args, **options):
        try:
            return self.handle_command(*args, **options)
        except (InputError, OracleError) as e:
            logger.error(f"{self.command_name()} 입력 오류: {e}")
            raise CommandError(str(e), returncode=EXIT_USAGE) from e
        except CocycleError as e:
            logger.error(f"{self.command_name()} 코사이클 검사 실패: {e}")
            message = str(e) if e.witness is None else f"{e} (witness: {e.witness})"
            raise CommandError(message, returncode=EXIT_FAILURE) from e
        except NilautoError as e:
            logger.error(f"{self.command_name()} 실패: {e}")
            raise CommandError(str(e), returncode=EXIT_FAILURE) from e

    def handle_command(self, *args, **options):
        raise NotImplementedError

    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]
