# (c) Copyright The markoff toolkit authors 2026

"""
Exception hierarchy for the markoff package.

MarkoffError - base class for everything raised on purpose by this package.
  - UsageError - a precondition of an operation does not hold (bad prime, excluded trace, ...)
  - InvariantViolation - a computed fact contradicts a proven statement.  Carries reproduction data.
  - GroupBuildError - a finite group could not be built (cap exceeded, bad generator, bad spec file)
  - CacheError - a cache file is unreadable, truncated or from another version
"""


class MarkoffError(Exception):
    pass


class UsageError(MarkoffError, ValueError):
    pass


class InvariantViolation(MarkoffError):
    def __init__(self, message, **payload):
        super(InvariantViolation, self).__init__(message)
        self.payload = payload

    def to_dict(self):
        kvs = dict()
        kvs['error'] = str(self)
        kvs['payload'] = self.payload
        return kvs


class GroupBuildError(MarkoffError):
    pass


class CacheError(MarkoffError):
    pass
