# === File: src/models.py ===

from sqlalchemy import Column, Integer, String, DateTime, Text, JSON, Index
from sqlalchemy.sql import func
from src.database import Base

class AnalysisCache(Base):
    """
    Finished analysis reports keyed by curve and analysis options.
    """
    __tablename__ = "analysis_cache"

    id = Column(Integer, primary_key=True, index=True)
    query_hash = Column(String(64), nullable=False, unique=True, comment="SHA256 hash of the canonical curve and options")
    r_text = Column(Text, nullable=False, comment="Canonical r(t)")
    theta_text = Column(Text, nullable=False, comment="Canonical theta(t)")
    report_json = Column(JSON, comment="AnalysisReportSchema dump")
    report_text = Column(Text, comment="Text report")
    created_at = Column(DateTime(timezone=True), server_default=func.now(), comment="Cache creation timestamp")

    __table_args__ = (
        Index('idx_analysis_cache_hash', 'query_hash'),
    )

    def __repr__(self):
        return f"<AnalysisCache(id={self.id}, r='{self.r_text}', theta='{self.theta_text}')>"
