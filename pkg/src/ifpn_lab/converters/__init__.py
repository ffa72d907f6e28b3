from .report import Report, ReportConverter
