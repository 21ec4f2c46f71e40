# === File: src/database.py ===

"""
Engine and sessions of the report cache.

SQLite is the default backend; any SQLAlchemy URL works.
"""

from sqlalchemy import create_engine, text
from sqlalchemy.engine import make_url
from sqlalchemy.orm import declarative_base, sessionmaker

from config import DATABASE_CONNECTION_STRING
from src.logging_config import get_logger

logger = get_logger(__name__)

if not DATABASE_CONNECTION_STRING:
    raise ValueError("DATABASE_CONNECTION_STRING environment variable is required")


def _connect_args(url: str) -> dict:
    # FastAPI runs sync endpoints and their dependencies on worker threads
    if make_url(url).get_backend_name() == 'sqlite':
        return {'check_same_thread': False}
    return {}


try:
    engine = create_engine(
        DATABASE_CONNECTION_STRING,
        connect_args=_connect_args(DATABASE_CONNECTION_STRING),
        pool_pre_ping=True,
        echo=False,
    )
    logger.info(f"Report cache engine created ({engine.dialect.name})")
except Exception as e:
    logger.error(f"Failed to create report cache engine: {e}")
    raise

SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)

Base = declarative_base()


def get_db():
    """
    Session per request; used as a FastAPI dependency.
    """
    db = SessionLocal()
    try:
        yield db
    except Exception as e:
        logger.error(f"Report cache session error: {e}")
        db.rollback()
        raise
    finally:
        db.close()


def create_tables() -> bool:
    """
    Create the analysis_cache table if it does not exist.
    """
    try:
        from src.models import AnalysisCache  # noqa: F401

        Base.metadata.create_all(bind=engine)
        logger.info("Report cache tables ready")
        return True
    except Exception as e:
        logger.error(f"Failed to create report cache tables: {e}")
        raise


def check_connection() -> bool:
    """
    True when the cache database answers a trivial query.
    """
    try:
        with engine.connect() as connection:
            connection.execute(text("SELECT 1"))
        logger.debug("Report cache connection test successful")
        return True
    except Exception as e:
        logger.error(f"Report cache connection test failed: {e}")
        return False
