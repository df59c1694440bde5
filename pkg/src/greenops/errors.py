"""Error types shared across the service.

Every error that can surface through the HTTP layer derives from AppError
and carries a short machine code; the API layer owns the mapping from
error class to HTTP status.
"""
from __future__ import annotations


class AppError(Exception):
    code = "APP_ERROR"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class FieldErrorList(list):
    """List of (field, reason) pairs produced by validation."""

    def render(self) -> str:
        return "; ".join(f"{field}: {reason}" for field, reason in self)


class ValidationFailed(AppError):
    code = "VALIDATION_FAILED"

    def __init__(self, errors, message: str | None = None):
        self.errors = errors if isinstance(errors, FieldErrorList) else FieldErrorList(errors)
        super().__init__(message or self.errors.render() or "validation failed")


class UniquenessViolation(AppError):
    code = "UNIQUENESS_VIOLATION"

    def __init__(self, constraint: str, message: str, code: str | None = None):
        super().__init__(message)
        self.constraint = constraint
        if code is not None:
            self.code = code


class NotFound(AppError):
    code = "NOT_FOUND"

    def __init__(self, kind: str, key):
        super().__init__(f"{kind} {key} not found")
        self.kind = kind
        self.key = key


class ConflictInUse(AppError):
    code = "CONFLICT_IN_USE"


class IllegalTransition(AppError):
    code = "ILLEGAL_TRANSITION"


class Forbidden(AppError):
    code = "FORBIDDEN"


class Unauthenticated(AppError):
    code = "UNAUTHENTICATED"


class InvalidCredentials(Unauthenticated):
    code = "INVALID_CREDENTIALS"

    # One fixed message keeps unknown-user and wrong-password failures
    # indistinguishable to callers.
    def __init__(self, message: str = "invalid username or password"):
        super().__init__(message)


class WeakPassword(AppError):
    code = "WEAK_PASSWORD"


class UsernameTaken(UniquenessViolation):
    code = "USERNAME_TAKEN"

    def __init__(self, username: str):
        super().__init__("user_account.username", f"username {username!r} is already taken")


class AlreadySignedIn(UniquenessViolation):
    code = "ALREADY_SIGNED_IN"

    def __init__(self, account_id: int, day):
        super().__init__(
            "attendance_record.account_day",
            f"account {account_id} already signed in on {day}",
        )


class EmptyFile(AppError):
    code = "EMPTY_FILE"


class UnsupportedType(AppError):
    code = "UNSUPPORTED_TYPE"


class TooLarge(AppError):
    code = "TOO_LARGE"


class UnknownVersion(AppError):
    code = "UNKNOWN_VERSION"


class UnsupportedVersion(AppError):
    code = "UNSUPPORTED_VERSION"


class ImportIntoNonEmpty(AppError):
    code = "IMPORT_INTO_NON_EMPTY"


class SeedRefused(AppError):
    code = "SEED_REFUSED"


class LoadTestFailed(AppError):
    code = "LOADTEST_FAILED"
