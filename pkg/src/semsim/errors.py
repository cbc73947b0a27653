"""Exception hierarchy shared by all semsim modules."""


class SemsimError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(SemsimError):
    pass


# taxonomy
class CycleDetected(SemsimError):
    pass


class DuplicateSynsetId(SemsimError):
    pass


class DanglingEdge(SemsimError):
    def __init__(self, message, endpoint=None):
        super().__init__(message)
        self.endpoint = endpoint


class UnknownSynset(SemsimError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownWord(SemsimError, KeyError):
    """A word (concept label) that cannot be resolved to any synset."""

    def __init__(self, word):
        super().__init__(f"unknown word: {word!r}")
        self.word = word

    def __str__(self):
        return Exception.__str__(self)


# infocontent
class EmptyCorpusWarning(UserWarning):
    """No corpus token resolved to a synset; the table is smoothing-only."""


# svd
class NoConvergence(SemsimError):
    pass


class RankTooLarge(SemsimError, ValueError):
    pass


class MatrixFormatError(SemsimError, ValueError):
    pass


# lsa
class EmptyCollection(SemsimError, ValueError):
    pass


class SingleDocument(SemsimError, ValueError):
    pass


class UnknownTerm(SemsimError, KeyError):
    def __init__(self, term):
        super().__init__(f"term not in vocabulary: {term!r}")
        self.term = term

    def __str__(self):
        return Exception.__str__(self)


class OutOfVocabulary(SemsimError, KeyError):
    def __init__(self, label):
        super().__init__(f"no in-vocabulary token in label: {label!r}")
        self.label = label
        self.word = label

    def __str__(self):
        return Exception.__str__(self)


# evaluation
class BackendUnavailable(SemsimError):
    pass


class EmptyReference(SemsimError, ValueError):
    pass


class BadSweepConfig(SemsimError, ValueError):
    pass


# parsing
class ParseError(SemsimError):
    def __init__(self, message, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.path = path
        self.line = line


class MalformedLine(ParseError):
    def __init__(self, message, position=None, line=None, path=None):
        if position is not None:
            message = f"{message} (byte {position})"
        super().__init__(message, path=path, line=line)
        self.position = position


class EmptyDatabase(SemsimError):
    pass
