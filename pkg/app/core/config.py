# app/core/config.py

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Proyecto
    PROJECT_NAME: str = "Half-Derivative AG Verifier"
    VERSION: str = "1.0.0"
    REPORT_SCHEMA_VERSION: str = "1.0"

    # Precisión numérica
    DEFAULT_PRECISION_BITS: int = 256
    GUARD_BITS: int = 32  # bits extra para todas las evaluaciones mpmath

    # Verificación formal
    DEFAULT_ORDER: int = 12  # orden en t de los teoremas
    DEFAULT_Q_ORDER: int = 30
    DEFAULT_SEED: int = 20240611
    BAILEY_SAMPLES: int = 100

    # Paralelismo (0 = un worker por CPU)
    AGQ_THREADS: int = 0
    MAX_THREADS: int = 8

    # Logging
    LOG_LEVEL: str = "INFO"

    class Config:
        env_file = ".env"
        case_sensitive = True


settings = Settings()
