from typing import Any, Dict


class GrundyError(Exception):
    """솔버 공통 예외. exit_code 는 CLI 종료 코드로 그대로 사용된다."""

    exit_code = 1

    def __init__(self, message: str, **detail: Any):
        super().__init__(message)
        self.message = message
        self.detail: Dict[str, Any] = {"error": type(self).__name__, "message": message, **detail}


class InputError(GrundyError):
    """잘못된 입력 (형식 오류, 범위 밖 정점, 전제조건 위반)"""

    exit_code = 1


class GuardExceededError(InputError):
    """인스턴스가 설정된 크기 제한을 넘은 경우"""

    def __init__(self, guard: str, limit: int, actual: int):
        super().__init__(f"{guard} exceeded: {actual} > {limit}", guard=guard, limit=limit, actual=actual)


class BudgetExceededError(GrundyError):
    exit_code = 2


class CertificateError(GrundyError):
    """출력 직전 재검증에 실패한 인증서"""

    exit_code = 3
