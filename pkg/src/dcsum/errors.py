"""Exception types shared across the toolkit."""


class DcsumError(Exception):
    """Base class for all toolkit errors."""


class IoError(DcsumError):
    pass


class MissingColumn(DcsumError):
    def __init__(self, column: str):
        super().__init__(f"required column/key missing: {column!r}")
        self.column = column


class DuplicateId(DcsumError):
    def __init__(self, hadm_id: str, index: int):
        super().__init__(f"duplicate hadm_id {hadm_id!r} at record {index}")
        self.hadm_id = hadm_id
        self.index = index


class MalformedRecord(DcsumError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"malformed record at index {index}: {reason}")
        self.index = index
        self.reason = reason


class EmptyCorpus(DcsumError):
    pass


class UnknownKind(DcsumError):
    pass


class VocabularyNotLoaded(DcsumError):
    pass


class LengthMismatch(DcsumError):
    pass


class MissingMetric(DcsumError):
    def __init__(self, metrics):
        super().__init__(f"missing metrics: {sorted(metrics)}")
        self.metrics = set(metrics)


class AlignmentError(DcsumError):
    def __init__(self, unmatched):
        keys = ", ".join(f"{h}/{t}" for h, t in sorted(unmatched))
        super().__init__(f"generated/reference id sets do not align: {keys}")
        self.unmatched = set(unmatched)
