# === File: src/utils/report_cache.py ===

import hashlib
import json
from typing import Any, Dict, Optional, Tuple

from sqlalchemy.orm import Session

from src.logging_config import get_logger
from src.models import AnalysisCache

logger = get_logger(__name__)


def build_query_hash(r_text: str, theta_text: str, options: Dict[str, Any]) -> str:
    """
    SHA256 of the canonical curve texts and the options that change the report.
    """
    payload = json.dumps({'r': r_text, 'theta': theta_text, 'options': options}, sort_keys=True)
    return hashlib.sha256(f"polar_analysis_{payload}".encode()).hexdigest()


def get_cached_report(db: Session, query_hash: str) -> Optional[Tuple[Dict, str]]:
    """
    Cached (report_json, report_text) for a query hash, or None.

    Lookup errors are logged and treated as a miss.
    """
    try:
        entry = db.query(AnalysisCache).filter(AnalysisCache.query_hash == query_hash).first()
        if entry:
            logger.info(f"Using cached report for ({entry.r_text}, {entry.theta_text})")
            return entry.report_json, entry.report_text
        logger.info(f"No cached report for hash {query_hash[:12]}")
        return None
    except Exception as e:
        logger.error(f"Error retrieving cached report: {e}")
        try:
            db.rollback()
        except Exception as rollback_error:
            logger.error(f"Error during rollback: {rollback_error}")
        return None


def store_report(db: Session, query_hash: str, r_text: str, theta_text: str,
                 report_json: Dict, report_text: str) -> bool:
    """
    Save a report, replacing any entry with the same hash.

    Returns:
        True if saved successfully, False otherwise
    """
    try:
        db.query(AnalysisCache).filter(AnalysisCache.query_hash == query_hash).delete()
        db.add(AnalysisCache(
            query_hash=query_hash,
            r_text=r_text,
            theta_text=theta_text,
            report_json=report_json,
            report_text=report_text,
        ))
        db.commit()
        logger.info(f"Saved report to cache: ({r_text}, {theta_text})")
        return True
    except Exception as e:
        logger.error(f"Error saving report to cache: {e}")
        db.rollback()
        return False
