"""Accounts, password hashing, and stateless bearer tokens.

Passwords are stored as ``pbkdf2_sha256_<iterations>$<salt>$<digest>``;
the iteration count rides inside the stored string, so it can be raised
later without invalidating existing credentials. Tokens are HMAC-SHA256
signed JSON payloads, so the server keeps no session table.
"""
from __future__ import annotations

import base64
import hashlib
import hmac
import json
import secrets
from dataclasses import dataclass
from datetime import datetime, timedelta

from .domain import Gardener, Role, Supplier, UserAccount
from .errors import (
    InvalidCredentials,
    NotFound,
    Unauthenticated,
    UsernameTaken,
    ValidationFailed,
    WeakPassword,
)
from .store import Store
from .times import today_utc, utc_now

DEFAULT_ITERATIONS = 120_000
MIN_PASSWORD_LENGTH = 8
MAX_PASSWORD_LENGTH = 72
TOKEN_TTL = timedelta(hours=24)

_SALT_BYTES = 16


class PasswordHasher:
    def __init__(self, iterations: int = DEFAULT_ITERATIONS):
        if iterations < 1:
            raise ValueError("iterations must be positive")
        self.iterations = iterations

    def hash(self, password: str) -> str:
        salt = secrets.token_hex(_SALT_BYTES)
        digest = self._digest(password, salt, self.iterations)
        encoded = f"pbkdf2_sha256_{self.iterations}${salt}${digest}"
        # Storage columns cap the credential string at 128 chars.
        assert len(encoded) <= 128
        return encoded

    def verify(self, password: str, encoded: str) -> bool:
        try:
            algorithm, salt, digest = encoded.split("$")
            prefix, _, iter_text = algorithm.rpartition("_")
            if prefix != "pbkdf2_sha256":
                return False
            iterations = int(iter_text)
        except ValueError:
            return False
        candidate = self._digest(password, salt, iterations)
        return hmac.compare_digest(candidate, digest)

    @staticmethod
    def _digest(password: str, salt: str, iterations: int) -> str:
        raw = hashlib.pbkdf2_hmac(
            "sha256", password.encode("utf-8"), salt.encode("utf-8"), iterations
        )
        return raw.hex()


def _b64(data: bytes) -> str:
    return base64.urlsafe_b64encode(data).rstrip(b"=").decode("ascii")


def _unb64(text: str) -> bytes:
    padding = "=" * (-len(text) % 4)
    return base64.urlsafe_b64decode(text + padding)


@dataclass(frozen=True)
class TokenClaims:
    account_id: int
    role: Role
    issued_at: int
    expires_at: int


class TokenCodec:
    def __init__(self, secret: str, ttl: timedelta = TOKEN_TTL):
        if not secret:
            raise ValueError("token secret must not be empty")
        self._key = secret.encode("utf-8")
        self._ttl = ttl

    def issue(self, account: UserAccount, now: datetime | None = None) -> str:
        now = now or utc_now()
        payload = {
            "account_id": account.id,
            "role": account.role.value,
            "issued_at": int(now.timestamp()),
            "expires_at": int((now + self._ttl).timestamp()),
        }
        body = _b64(json.dumps(payload, sort_keys=True).encode("utf-8"))
        return f"{body}.{self._sign(body)}"

    def decode(self, token: str, now: datetime | None = None) -> TokenClaims:
        now = now or utc_now()
        try:
            body, signature = token.split(".")
        except ValueError:
            raise Unauthenticated("malformed token") from None
        if not hmac.compare_digest(self._sign(body), signature):
            raise Unauthenticated("token signature mismatch")
        try:
            payload = json.loads(_unb64(body))
            claims = TokenClaims(
                account_id=int(payload["account_id"]),
                role=Role(payload["role"]),
                issued_at=int(payload["issued_at"]),
                expires_at=int(payload["expires_at"]),
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise Unauthenticated("malformed token payload") from exc
        if int(now.timestamp()) >= claims.expires_at:
            raise Unauthenticated("token expired")
        return claims

    def _sign(self, body: str) -> str:
        return _b64(hmac.new(self._key, body.encode("ascii"), hashlib.sha256).digest())


class AuthService:
    """Registration, login, and token verification against the store."""

    def __init__(self, store: Store, secret: str, iterations: int = DEFAULT_ITERATIONS):
        self.store = store
        self.hasher = PasswordHasher(iterations)
        self.tokens = TokenCodec(secret)

    def register(
        self,
        username: str,
        password: str,
        role: Role,
        *,
        email: str | None = None,
        phone: str | None = None,
        profile_name: str | None = None,
    ) -> UserAccount:
        """Create an account plus the matching staff profile in one commit."""
        if not username or not username.strip():
            raise ValidationFailed([("username", "must not be blank")])
        self._check_password_strength(password)
        account = UserAccount(
            id=0,
            username=username.strip(),
            password_hash=self.hasher.hash(password),
            role=role,
            email=email,
            phone=phone,
        )
        with self.store.batch():
            if self.store.find_one("user_account", lambda a: a.username == account.username):
                raise UsernameTaken(account.username)
            account = self.store.insert("user_account", account)
            display = profile_name or account.username
            if role is Role.GARDENER:
                self.store.insert(
                    "gardener",
                    Gardener(
                        id=0,
                        name=display,
                        phone=phone or "unknown",
                        hire_date=today_utc(),
                        account_id=account.id,
                    ),
                )
            elif role is Role.SUPPLIER:
                self.store.insert(
                    "supplier",
                    Supplier(id=0, name=display, phone=phone or "unknown", account_id=account.id),
                )
        return account

    def login(self, username: str, password: str) -> tuple[str, UserAccount]:
        account = self.store.find_one("user_account", lambda a: a.username == username)
        if account is None or not self.hasher.verify(password, account.password_hash):
            raise InvalidCredentials()
        return self.tokens.issue(account), account

    def authenticate(self, token: str) -> UserAccount:
        claims = self.tokens.decode(token)
        try:
            return self.store.get("user_account", claims.account_id)
        except NotFound:
            raise Unauthenticated("account no longer exists") from None

    def change_password(self, account: UserAccount, old: str, new: str) -> UserAccount:
        if not self.hasher.verify(old, account.password_hash):
            raise InvalidCredentials()
        self._check_password_strength(new)
        return self.store.update(
            "user_account", account.id, {"password_hash": self.hasher.hash(new)}
        )

    @staticmethod
    def _check_password_strength(password: str) -> None:
        if (
            not isinstance(password, str)
            or not MIN_PASSWORD_LENGTH <= len(password) <= MAX_PASSWORD_LENGTH
        ):
            raise WeakPassword(
                f"password must be {MIN_PASSWORD_LENGTH}..{MAX_PASSWORD_LENGTH} characters"
            )
