from .engine_parser import parser as engineConfigParser
from .logger_parser import parser as loggerConfigParser
