"""
Certifier Coordinator - 批量证明与复核
Runs several proofs concurrently, re-checks each certificate and summarises the batch
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import asyncio
import logging
from datetime import datetime

from core.config import RunConfig
from core.minorations import MinorationTable, load_table_file
from core.prover import (
    Certificate,
    ProofEngine,
    ProverSettings,
    Scenario,
    Verdict,
    check_certificate,
    prove_preset,
    surviving_degrees,
)

logger = logging.getLogger(__name__)

Job = Union[Tuple[str, int], Scenario]


class CertifierCoordinator:
    """
    证明协调器
    Dispatches preset proofs to worker threads and checks every certificate it gets back.
    """

    def __init__(self, config: Optional[RunConfig] = None, table: Optional[MinorationTable] = None):
        self.config = config or RunConfig.from_env()
        self.table = table if table is not None else load_table_file(self.config.table_path)
        self.settings = ProverSettings(
            search_order_cap=self.config.search_order_cap,
            order_cap=self.config.order_cap,
        )
        logger.info("✓ Certifier Coordinator initialized")

    def prove_one(self, job: Job) -> Tuple[Verdict, Certificate]:
        if isinstance(job, Scenario):
            return ProofEngine(self.table, self.settings).prove(job)
        name, p = job
        return prove_preset(name, p, self.table, self.settings)

    @staticmethod
    def _label(job: Job) -> Tuple[str, int]:
        if isinstance(job, Scenario):
            return "scenario", job.p
        return job

    def _job_result(self, job: Job, outcome: Any) -> Dict[str, Any]:
        name, p = self._label(job)
        result: Dict[str, Any] = {"preset": name, "p": p}
        if isinstance(job, Scenario):
            result["scenario"] = job.describe()
        if isinstance(outcome, Exception):
            logger.error(f"Proof {name} p={p} failed: {outcome}")
            result["error"] = str(outcome)
            return result
        verdict, cert = outcome
        report = check_certificate(cert, self.table)
        if not report:
            logger.error(f"Certificate for {name} p={p} rejected: {report.reason}")
        result.update({
            "verdict": str(verdict),
            "non_existence": verdict.is_non_existence,
            "steps": len(cert.steps),
            "surviving_degrees": surviving_degrees(cert),
            "check": report.to_dict(),
            "certificate": cert,
        })
        return result

    async def prove_many(self, jobs: Sequence[Job]) -> Dict[str, Any]:
        """
        Prove a batch of presets concurrently

        Args:
            jobs: (preset name, p) pairs or explicit scenarios

        Returns:
            {'timestamp', 'results': per-job dicts in job order, 'synthesis': batch summary}
        """
        limit = asyncio.Semaphore(self.config.workers)

        async def run(job: Job):
            async with limit:
                return await asyncio.to_thread(self.prove_one, job)

        outcomes = await asyncio.gather(*(run(job) for job in jobs), return_exceptions=True)
        results = [self._job_result(job, outcome) for job, outcome in zip(jobs, outcomes)]
        return {
            "timestamp": datetime.now().isoformat(),
            "results": results,
            "synthesis": self._synthesize_results(results),
        }

    def prove_many_sync(self, jobs: Sequence[Job]) -> Dict[str, Any]:
        return asyncio.run(self.prove_many(jobs))

    def _synthesize_results(self, results: List[Dict[str, Any]]) -> Dict[str, Any]:
        synthesis = {"proved": [], "inconclusive": [], "errors": [], "rejected": []}
        for result in results:
            label = f"{result['preset']} p={result['p']}"
            if "error" in result:
                synthesis["errors"].append(label)
                continue
            if not result["check"]["ok"]:
                synthesis["rejected"].append(label)
            key = "proved" if result["non_existence"] else "inconclusive"
            synthesis[key].append(label)
        synthesis["all_checked"] = not synthesis["rejected"] and not synthesis["errors"]
        return synthesis
