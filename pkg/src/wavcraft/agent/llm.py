"""Chat-completion clients: an OpenAI-compatible HTTP client for live use
and a scripted transcript client so everything runs offline in tests."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import requests

from ..errors import BackendError, ConfigError

ENV_BASE_URL = "WAVCRAFT_LLM_BASE_URL"
ENV_API_KEY = "WAVCRAFT_LLM_API_KEY"
ENV_MODEL = "WAVCRAFT_LLM_MODEL"

DEFAULT_TEMPERATURE = 0.0
DEFAULT_MAX_TOKENS = 1024


@dataclass(frozen=True)
class LLMConfig:
    base_url: str
    api_key: str
    model: str
    temperature: float = DEFAULT_TEMPERATURE
    max_tokens: int = DEFAULT_MAX_TOKENS
    timeout_s: float = 120.0


class OpenAIChatClient:
    """Single-shot chat completions against any OpenAI-compatible endpoint."""

    def __init__(self, config: LLMConfig):
        self.config = config

    def chat(self, messages: list[dict]) -> str:
        url = self.config.base_url.rstrip("/") + "/chat/completions"
        try:
            response = requests.post(
                url,
                json={
                    "model": self.config.model,
                    "messages": messages,
                    "temperature": self.config.temperature,
                    "max_tokens": self.config.max_tokens,
                },
                headers={"Authorization": f"Bearer {self.config.api_key}"},
                timeout=self.config.timeout_s,
            )
        except requests.RequestException as exc:
            raise BackendError(f"LLM endpoint unreachable: {exc}", code="llm_transport") from None
        if not (200 <= response.status_code < 300):
            raise BackendError(
                f"LLM endpoint returned HTTP {response.status_code}: {response.text[:200]}",
                code="llm_error",
            )
        try:
            content = response.json()["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError):
            raise BackendError("malformed chat completion response", code="llm_error") from None
        if not content:
            raise BackendError("empty completion", code="llm_error")
        return content


@dataclass
class ScriptedLLM:
    """Returns canned responses in order; the k-th call gets the k-th entry."""

    responses: list[str]
    calls: list[list[dict]] = field(default_factory=list)

    def chat(self, messages: list[dict]) -> str:
        self.calls.append(messages)
        if len(self.calls) > len(self.responses):
            raise BackendError(
                f"scripted transcript exhausted after {len(self.responses)} responses",
                code="llm_transport",
            )
        return self.responses[len(self.calls) - 1]


def scripted_from_file(path: str | Path) -> ScriptedLLM:
    """Transcript file: a JSON list of response strings, consumed in order."""
    try:
        responses = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot load scripted transcript {path}: {exc}") from None
    if not isinstance(responses, list) or not all(isinstance(r, str) for r in responses):
        raise ConfigError(f"scripted transcript {path} must be a JSON list of strings")
    return ScriptedLLM(responses)


def client_from_spec(spec: str):
    """CLI form: 'scripted:responses.json' or 'env' for the configured endpoint."""
    if spec.startswith("scripted:"):
        return scripted_from_file(spec.split(":", 1)[1])
    if spec == "env":
        return client_from_env()
    raise ConfigError(f"unknown LLM spec {spec!r}; use 'env' or 'scripted:FILE'")


def client_from_env(environ=None) -> OpenAIChatClient:
    env = os.environ if environ is None else environ
    base_url = env.get(ENV_BASE_URL)
    if not base_url:
        raise ConfigError(
            f"no LLM configured: set {ENV_BASE_URL} or pass a scripted transcript"
        )
    api_key = env.get(ENV_API_KEY)
    if not api_key:
        raise ConfigError(f"{ENV_BASE_URL} is set but {ENV_API_KEY} is missing")
    model = env.get(ENV_MODEL, "gpt-4")
    return OpenAIChatClient(LLMConfig(base_url=base_url, api_key=api_key, model=model))


def llm_chat(messages: list[dict], config: LLMConfig) -> str:
    return OpenAIChatClient(config).chat(messages)
