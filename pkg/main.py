"""
Discriminant-bound certifier - Main Entry Point
演示入口：并行证明所有预设场景并独立复核证书
"""

import asyncio
import logging
from typing import Any, Dict, List, Tuple

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from client.certifier_client import CertifierClient
from core.prover import EXPECTED_NON_EXISTENCE, elliptic_curve_certificate
from core.weil import count_local_lfactors, hasse_interval, hm_degree_threshold


class CertifierApp:
    """
    证明器主应用程序
    """

    def __init__(self):
        logger.info("Initializing discriminant-bound certifier...")
        self.client = CertifierClient()
        logger.info("✓ System initialized")

    def preset_jobs(self) -> List[Tuple[str, int]]:
        return [(name, p) for name, primes in EXPECTED_NON_EXISTENCE.items() for p in primes]

    async def prove_all(self) -> Dict[str, Any]:
        return await self.client.coordinator.prove_many(self.preset_jobs())


async def demo_presets():
    """预设场景演示"""
    print("\n" + "=" * 60)
    print("Preset scenarios - proved concurrently, every certificate re-checked")
    print("=" * 60)

    app = CertifierApp()
    result = await app.prove_all()
    print(app.client.format_response(result))
    print("\n" + "=" * 60)


def demo_elliptic():
    """No elliptic curve over Z: the reduction at q = 11 and at q = 2"""
    print("\n" + "=" * 60)
    print("Elliptic curves with good reduction everywhere")
    print("=" * 60)

    app = CertifierApp()
    for q in (None, 2):
        verdict, cert = elliptic_curve_certificate(app.client.table, 5, q)
        for step in cert.steps:
            print(f"  {step.id} {step.rule:8} {step.claim}")
        print(f"  -> {verdict}\n")


def demo_weil():
    """Weil polynomials and the Hasse interval"""
    print("\n" + "=" * 60)
    print("Local factors")
    print("=" * 60)
    print(f"Hasse interval over F_2: {hasse_interval(2)}")
    print(f"Degree cap p^(2dn^2) for n=2, d=1, p=3: {hm_degree_threshold(2, 1, 3)}")
    print(count_local_lfactors(2, 1, 4).to_string(index=False))


def main():
    """主函数"""
    print("\n" + "=" * 60)
    print("Discriminant-bound certifier")
    print("判别式界非存在性证明")
    print("=" * 60)
    print("\n请选择模式:")
    print("1. 预设场景")
    print("2. 椭圆曲线")
    print("3. Weil 多项式")
    print("4. 运行所有演示")

    try:
        choice = input("\n请选择 (1-4): ").strip()

        if choice == '1':
            asyncio.run(demo_presets())
        elif choice == '2':
            demo_elliptic()
        elif choice == '3':
            demo_weil()
        elif choice == '4':
            asyncio.run(demo_presets())
            demo_elliptic()
            demo_weil()
        else:
            print("无效选择")

    except KeyboardInterrupt:
        print("\n\n退出")


if __name__ == "__main__":
    main()
