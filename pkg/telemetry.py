"""OpenTelemetry setup for verification runs.

Traces and logs go to Azure Monitor when AZURE_APP_INSIGHTS_CONNECTION_STRING is set,
spans go to the console exporter (stderr) when VERIFY_TRACE_CONSOLE is true, otherwise
the default no-op provider stays in place.
"""

import logging
import os
import sys

from opentelemetry.sdk.resources import Resource
from opentelemetry.semconv.resource import ResourceAttributes

logger = logging.getLogger(__name__)

SERVICE_NAME = "Operator Algebra Verifier"

resource = Resource.create({ResourceAttributes.SERVICE_NAME: SERVICE_NAME})


def set_up_tracing(connection_string: str | None = None, console: bool = False) -> bool:
    from opentelemetry.sdk.trace import TracerProvider
    from opentelemetry.sdk.trace.export import BatchSpanProcessor, ConsoleSpanExporter, SimpleSpanProcessor
    from opentelemetry.trace import set_tracer_provider

    # Initialize a trace provider for the application. This is a factory for creating tracers.
    tracer_provider = TracerProvider(resource=resource)
    if connection_string:
        from azure.monitor.opentelemetry.exporter import AzureMonitorTraceExporter

        tracer_provider.add_span_processor(
            BatchSpanProcessor(AzureMonitorTraceExporter(connection_string=connection_string))
        )
    if console:
        tracer_provider.add_span_processor(SimpleSpanProcessor(ConsoleSpanExporter(out=sys.stderr)))
    # Sets the global default tracer provider
    set_tracer_provider(tracer_provider)
    return True


def set_up_logging(connection_string: str) -> None:
    from azure.monitor.opentelemetry.exporter import AzureMonitorLogExporter
    from opentelemetry._logs import set_logger_provider
    from opentelemetry.sdk._logs import LoggerProvider, LoggingHandler
    from opentelemetry.sdk._logs.export import BatchLogRecordProcessor

    logger_provider = LoggerProvider(resource=resource)
    logger_provider.add_log_record_processor(
        BatchLogRecordProcessor(AzureMonitorLogExporter(connection_string=connection_string))
    )
    set_logger_provider(logger_provider)

    # Events from all child loggers reach the exporter through the root logger.
    logging.getLogger().addHandler(LoggingHandler())


def configure_telemetry() -> bool:
    """Install exporters from the environment; failures are logged and never abort a run."""
    connection_string = os.getenv("AZURE_APP_INSIGHTS_CONNECTION_STRING")
    console = os.getenv("VERIFY_TRACE_CONSOLE", "").strip().lower() in ("1", "true", "yes")
    if not connection_string and not console:
        return False
    try:
        set_up_tracing(connection_string, console)
        if connection_string:
            set_up_logging(connection_string)
    except Exception as exc:  # exporter packages are optional
        logger.warning("Telemetry setup failed, continuing without it: %s", exc)
        return False
    return True
