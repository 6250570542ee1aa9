"""
Certificate Adapter - Converts certificates between text, structured and tabular forms
证书适配器 - 在文本、结构化（JSON）和表格格式之间转换证书
"""

from typing import Any, Dict
import json

import pandas as pd

from core.errors import CertificateFormatError, ScenarioError
from core.prover import (
    FORMAT_VERSION,
    Certificate,
    ProverSettings,
    Scenario,
    Step,
    Verdict,
    from_text,
    to_text,
)


class CertificateAdapter:
    """
    证书适配器

    The text form is what `check` reads; the structured form is the
    `--format structured` output; the frame is for inspection.
    """

    @staticmethod
    def to_structured(cert: Certificate) -> Dict[str, Any]:
        return cert.to_dict()

    @staticmethod
    def from_structured(data: Dict[str, Any]) -> Certificate:
        """
        Rebuild a certificate from its structured form

        Raises:
            CertificateFormatError: missing keys, wrong format version or bad scenario
        """
        if data.get("format") != FORMAT_VERSION:
            raise CertificateFormatError(f"unsupported format {data.get('format')!r}")
        try:
            steps = tuple(
                Step(
                    id=s["id"],
                    rule=s["rule"],
                    branch=s["branch"],
                    params=s["params"],
                    inputs=tuple(s["inputs"]),
                    claim=s["claim"],
                    witness=s["witness"],
                    citation=s["citation"],
                )
                for s in data["steps"]
            )
            return Certificate(
                scenario=Scenario.from_dict(data["scenario"]),
                steps=steps,
                verdict=Verdict.from_dict(data["verdict"]),
                settings=ProverSettings.from_dict(data["settings"]),
                kind=data["kind"],
            )
        except (KeyError, TypeError) as exc:
            raise CertificateFormatError(f"malformed structured certificate: {exc!r}") from exc
        except ScenarioError as exc:
            raise CertificateFormatError(str(exc)) from exc

    @staticmethod
    def text_to_json(text: str) -> str:
        return json.dumps(CertificateAdapter.to_structured(from_text(text)), indent=2, sort_keys=True)

    @staticmethod
    def json_to_text(payload: str) -> str:
        try:
            data = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"invalid JSON: {exc}") from exc
        return to_text(CertificateAdapter.from_structured(data))

    @staticmethod
    def load(payload: str) -> Certificate:
        """Either form; JSON is recognised by a leading brace"""
        if payload.lstrip().startswith("{"):
            try:
                data = json.loads(payload)
            except json.JSONDecodeError as exc:
                raise CertificateFormatError(f"invalid JSON: {exc}") from exc
            return CertificateAdapter.from_structured(data)
        return from_text(payload)

    @staticmethod
    def steps_frame(cert: Certificate) -> pd.DataFrame:
        """One row per step: id, rule, branch, inputs, claim"""
        return pd.DataFrame(
            [
                {
                    "id": step.id,
                    "rule": step.rule,
                    "branch": step.branch,
                    "inputs": ",".join(step.inputs),
                    "claim": step.claim,
                }
                for step in cert.steps
            ],
            columns=["id", "rule", "branch", "inputs", "claim"],
        )
