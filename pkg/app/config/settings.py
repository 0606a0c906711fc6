"""
Configuracoes globais do hkz.
Define paths de configuracao, limites dos algoritmos e logging.
"""

import logging
import os
from pathlib import Path
from dotenv import load_dotenv

# Carrega variaveis de ambiente do arquivo .env
load_dotenv()

# ---------------------------------------------------------------------------
# Diretorios
# ---------------------------------------------------------------------------

BASE_DIR: Path = Path(__file__).resolve().parent.parent.parent
CONFIG_DIR: Path = BASE_DIR / "config"

CATALOG_PATH: Path = Path(
    os.getenv("HKZ_CATALOG_PATH", str(CONFIG_DIR / "catalog_models.json"))
)

# ---------------------------------------------------------------------------
# Limites dos algoritmos
# ---------------------------------------------------------------------------

# Oraculo de forca bruta enumera 2^m subconjuntos de primos
BRUTEFORCE_MAX_PRIMES: int = int(os.getenv("HKZ_BRUTEFORCE_MAX_PRIMES", "20"))

# Linhas de um batch sao independentes e rodam num pool de threads
BATCH_WORKERS: int = int(os.getenv("HKZ_BATCH_WORKERS", "4"))

# ---------------------------------------------------------------------------
# Logging
# ---------------------------------------------------------------------------

# stdout e' reservado para os relatorios JSON; logs vao para stderr
LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")
LOG_FORMAT: str = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"

logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)

logger: logging.Logger = logging.getLogger("hkz")
