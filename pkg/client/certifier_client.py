"""
Certifier Client - User-facing interface
用户接口：证明预设场景、校验证书并格式化结果
"""

from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union
import logging

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from adapters.certificate_adapter import CertificateAdapter
from core.certifier_coordinator import CertifierCoordinator, Job
from core.config import RunConfig
from core.prover import CheckReport, Certificate, Verdict, check_certificate, to_text

logger = logging.getLogger(__name__)


class CertifierClient:
    """
    证明客户端
    Thin facade over the coordinator for scripts and the demo.
    """

    def __init__(self, config: Optional[RunConfig] = None):
        self.coordinator = CertifierCoordinator(config)
        logger.info("✓ Certifier Client initialized")

    @property
    def table(self):
        return self.coordinator.table

    def prove(self, preset: str, p: int) -> Tuple[Verdict, Certificate]:
        """
        Prove one preset

        Args:
            preset: preset name, e.g. "weight-one"
            p: the prime

        Returns:
            (verdict, certificate)
        """
        return self.coordinator.prove_one((preset, p))

    def prove_many(self, jobs: Sequence[Job]) -> Dict[str, Any]:
        return self.coordinator.prove_many_sync(jobs)

    def check(self, source: Union[str, Path, Certificate]) -> CheckReport:
        """Check a certificate object, or a file holding its text or JSON form"""
        if isinstance(source, Certificate):
            cert = source
        else:
            cert = CertificateAdapter.load(Path(source).read_text(encoding="utf-8"))
        return check_certificate(cert, self.table)

    def save(self, cert: Certificate, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.write_text(to_text(cert), encoding="utf-8")
        logger.info(f"Certificate written to {path}")
        return path

    def format_response(self, result: Dict[str, Any]) -> str:
        """
        Readable batch summary

        Args:
            result: output of prove_many

        Returns:
            text report
        """
        output = [f"📅 {result.get('timestamp', 'N/A')}", ""]
        for job in result.get("results", []):
            label = f"{job['preset']} p={job['p']}"
            if "error" in job:
                output.append(f"🔴 {label}: error: {job['error']}")
                continue
            mark = "💚" if job["non_existence"] else "💛"
            check = "checked" if job["check"]["ok"] else f"REJECTED ({job['check']['reason']})"
            output.append(f"{mark} {label}: {job['verdict']} in {job['steps']} steps, {check}")
            for branch, degrees in job["surviving_degrees"].items():
                output.append(f"  • {branch}: surviving degrees {degrees}")
        synthesis = result.get("synthesis", {})
        if synthesis:
            output.append("")
            output.append(f"proved {len(synthesis['proved'])}, inconclusive {len(synthesis['inconclusive'])}, "
                          f"errors {len(synthesis['errors'])}, rejected {len(synthesis['rejected'])}")
        return "\n".join(output)
