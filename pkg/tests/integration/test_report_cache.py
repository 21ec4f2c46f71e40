import pytest

from src.analysis.analyzer import AnalysisOptions
from src.database import SessionLocal, check_connection, create_tables
from src.models import AnalysisCache
from src.utils.report_cache import build_query_hash, get_cached_report, store_report


@pytest.fixture
def db():
    if not check_connection():
        pytest.skip("Cache database not reachable in this environment")
    create_tables()
    session = SessionLocal()
    try:
        yield session
    finally:
        session.query(AnalysisCache).delete()
        session.commit()
        session.close()


@pytest.mark.unit
def test_query_hash_depends_on_curve_and_report_options():
    options = AnalysisOptions(k_cap=3, workers=1).cache_fields()
    same = build_query_hash('t', 't', dict(options))
    assert same == build_query_hash('t', 't', options)
    assert len(same) == 64

    assert same != build_query_hash('t', 't^2', options)
    assert same != build_query_hash('t', 't', {**options, 'k_cap': 4})
    assert 'workers' not in options


@pytest.mark.integration
def test_store_and_get_report(db):
    query_hash = build_query_hash('t', 't', AnalysisOptions().cache_fields())
    assert get_cached_report(db, query_hash) is None

    assert store_report(db, query_hash, 't', 't', {'case': 'both_unbounded'}, "r and theta both unbounded\n")
    report_json, report_text = get_cached_report(db, query_hash)
    assert report_json == {'case': 'both_unbounded'}
    assert report_text == "r and theta both unbounded\n"


@pytest.mark.integration
def test_store_replaces_entry_with_same_hash(db):
    query_hash = build_query_hash('1/t^2', '(t^3+t-1)/t', AnalysisOptions().cache_fields())
    store_report(db, query_hash, '1/t^2', '(t^3+t-1)/t', {'version': 1}, "first\n")
    store_report(db, query_hash, '1/t^2', '(t^3+t-1)/t', {'version': 2}, "second\n")

    assert db.query(AnalysisCache).filter(AnalysisCache.query_hash == query_hash).count() == 1
    report_json, report_text = get_cached_report(db, query_hash)
    assert report_json == {'version': 2}
    assert report_text == "second\n"
