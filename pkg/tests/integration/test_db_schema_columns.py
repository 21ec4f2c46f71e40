import pytest
from sqlalchemy import inspect

from src.database import engine, check_connection, create_tables


EXPECTED_COLUMNS = {
    'analysis_cache': ['id', 'query_hash', 'r_text', 'theta_text', 'report_json', 'report_text', 'created_at'],
}


@pytest.mark.integration
def test_tables_exist_and_columns_match():
    if not check_connection():
        pytest.skip("Cache database not reachable in this environment")
    create_tables()

    insp = inspect(engine)
    existing_tables = set(insp.get_table_names())

    missing_tables = [t for t in EXPECTED_COLUMNS if t not in existing_tables]
    assert not missing_tables, f"Missing tables: {missing_tables}"

    for table_name, expected_cols in EXPECTED_COLUMNS.items():
        cols = [c['name'] for c in insp.get_columns(table_name)]
        missing_cols = sorted(set(expected_cols) - set(cols))
        extra_cols = sorted(set(cols) - set(expected_cols))
        assert not missing_cols, f"{table_name} missing columns: {missing_cols}"
        assert not extra_cols, f"{table_name} extra columns: {extra_cols}"


@pytest.mark.integration
def test_query_hash_is_indexed_and_unique():
    if not check_connection():
        pytest.skip("Cache database not reachable in this environment")
    create_tables()

    insp = inspect(engine)
    indexes = {ix['name']: ix for ix in insp.get_indexes('analysis_cache')}
    assert 'idx_analysis_cache_hash' in indexes
    assert indexes['idx_analysis_cache_hash']['column_names'] == ['query_hash']

    unique_columns = [c['column_names'] for c in insp.get_unique_constraints('analysis_cache')]
    unique_indexes = [ix['column_names'] for ix in indexes.values() if ix.get('unique')]
    assert ['query_hash'] in unique_columns + unique_indexes
