# === File: main.py ===

from contextlib import asynccontextmanager

from fastapi import FastAPI, Depends, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from sqlalchemy.orm import Session
from slowapi import Limiter, _rate_limit_exceeded_handler
from slowapi.util import get_remote_address
from slowapi.errors import RateLimitExceeded
from src.database import get_db, check_connection, create_tables
from src.schemas import HealthResponse, AnalyzeRequest, AnalyzeResponse, AnalysisReportSchema
from src.analysis.analyzer import AnalysisOptions, analyze_curve
from src.curves.polar_curve import parse_curve
from src.exceptions import CurveSyntaxError, CurveValidationError, MisuseError, TheoremViolation
from src.output.report import build_report, render_text
from src.utils.report_cache import build_query_hash, get_cached_report, store_report
from config import DEBUG, CACHE_ENABLED, ANALYZE_RATE_LIMIT, API_HOST, API_PORT
from src.logging_config import setup_logging, get_logger

# Setup logging
setup_logging()
logger = get_logger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    if CACHE_ENABLED:
        try:
            create_tables()
        except Exception as e:
            logger.error(f"Report cache unavailable: {e}")
    yield


# Create FastAPI application
app = FastAPI(
    title="Polar Curve Analyzer",
    description="Exact analysis of rational polar curves: self-intersections, limit circles, spirals and asymptotes",
    version="1.0.0",
    debug=DEBUG,
    lifespan=lifespan,
)

# Setup rate limiting
limiter = Limiter(key_func=get_remote_address)
app.state.limiter = limiter
app.add_exception_handler(RateLimitExceeded, _rate_limit_exceeded_handler)

# Configure CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

@app.get("/", response_model=dict)
async def root():
    """
    Root endpoint with basic API information.
    """
    return {
        "message": "Polar Curve Analyzer API",
        "version": "1.0.0",
        "status": "running",
        "docs": "/docs"
    }

@app.get("/health", response_model=HealthResponse)
@limiter.limit("30/minute")
async def health_check(request: Request):
    """
    Health check endpoint to verify service and report cache status.
    """
    try:
        db_connected = check_connection()
        return HealthResponse(
            status="ok" if db_connected else "degraded",
            database_connected=db_connected
        )
    except Exception as e:
        logger.error(f"Health check failed: {e}")
        raise HTTPException(
            status_code=503,
            detail=f"Service unhealthy: {str(e)}"
        )

def _options(analyze_request: AnalyzeRequest) -> AnalysisOptions:
    options = AnalysisOptions()
    if analyze_request.k_cap is not None:
        options.k_cap = analyze_request.k_cap
    if analyze_request.r_cap is not None:
        options.r_cap = analyze_request.r_cap
    if analyze_request.theta_cap is not None:
        options.theta_cap_multiple = analyze_request.theta_cap
    return options

# === Analysis Endpoint ===

@app.post("/analyze", response_model=AnalyzeResponse)
@limiter.limit(ANALYZE_RATE_LIMIT)
def analyze_endpoint(request: Request, analyze_request: AnalyzeRequest, db: Session = Depends(get_db)):
    """
    Analyze a rational polar curve and return the JSON and text reports.
    Reports are cached by canonical curve and options when the cache is enabled.
    """
    try:
        logger.info(f"Analyze request: r={analyze_request.r}, theta={analyze_request.theta}")
        curve = parse_curve(analyze_request.r, analyze_request.theta)
        options = _options(analyze_request)
        r_text, theta_text = curve.texts
        query_hash = build_query_hash(r_text, theta_text, options.cache_fields())

        if CACHE_ENABLED:
            cached = get_cached_report(db, query_hash)
            if cached:
                report_json, report_text = cached
                return AnalyzeResponse(
                    report=AnalysisReportSchema.model_validate(report_json),
                    text=report_text,
                    cached=True
                )

        analysis = analyze_curve(curve, options)
        report = build_report(analysis)
        text = render_text(analysis)
        if CACHE_ENABLED:
            store_report(db, query_hash, r_text, theta_text, report.model_dump(mode='json'), text)
        return AnalyzeResponse(report=report, text=text, cached=False)

    except CurveSyntaxError as e:
        logger.error(f"Syntax error in analyze request: {e}")
        raise HTTPException(
            status_code=422,
            detail={"error": "syntax", "detail": str(e), "position": e.position}
        )
    except (CurveValidationError, MisuseError) as e:
        logger.error(f"Invalid curve in analyze request: {e}")
        raise HTTPException(
            status_code=422,
            detail={"error": "validation", "detail": str(e)}
        )
    except TheoremViolation as e:
        logger.error(f"Internal contradiction while analyzing: {e}")
        raise HTTPException(
            status_code=500,
            detail={"error": "theorem_violation", "detail": str(e)}
        )
    except Exception as e:
        logger.error(f"Error in analyze endpoint: {e}")
        raise HTTPException(
            status_code=500,
            detail=f"Error analyzing curve: {str(e)}"
        )

if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "main:app",
        host=API_HOST,
        port=API_PORT,
        reload=DEBUG,
        log_level="info"
    )
