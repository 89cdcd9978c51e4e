"""
ルートデータ計算の例外クラス

CLIは exit_code をそのままプロセスの終了コードに使う
（0: 成功, 1: 検証失敗, 2: 入力の解析失敗, 3: Weyl群の上限超過）。
"""


class RootDatumError(Exception):
    exit_code = 1

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message

    def to_dict(self):
        return {"error": type(self).__name__, "message": self.message}


class ValidationError(RootDatumError):
    """入力が数学的な条件を満たさない"""


class NotCartan(ValidationError):
    def __init__(self, message, kind="C1"):
        super().__init__(message)
        # "C1" か "indefinite"
        self.kind = kind

    def to_dict(self):
        data = super().to_dict()
        data["kind"] = self.kind
        return data


class BadRank(ValidationError):
    pass


class WrongType(ValidationError):
    pass


class LatticeNotAboveZC(ValidationError):
    pass


class ClosureBudgetExceeded(ValidationError):
    pass


class MI1Violation(ValidationError):
    pass


class MI2Violation(ValidationError):
    pass


class NotEndo(ValidationError):
    pass


class NotSteinberg(ValidationError):
    pass


class NotSemisimple(ValidationError):
    pass


class NotFiniteOrder(ValidationError):
    pass


class DoesNotNormalizeW(ValidationError):
    pass


class MixedRadicand(ValidationError):
    pass


class QNotInP(ValidationError):
    pass


class NotSimple(ValidationError):
    pass


class BadParams(ValidationError):
    pass


class BadType(ValidationError):
    pass


class ConsistencyFailure(RootDatumError):
    """内部の恒等式が成り立たなかった（入力ではなく実装の不具合）"""


class ParseError(RootDatumError):
    exit_code = 2

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CapExceeded(RootDatumError):
    exit_code = 3

    def __init__(self, size, cap):
        super().__init__(f"|W| = {size} exceeds the enumeration cap {cap}")
        self.size = size
        self.cap = cap

    def to_dict(self):
        data = super().to_dict()
        data.update({"size": self.size, "cap": self.cap})
        return data


class _Indeterminate:
    """isomorphic が判定できなかったことを表す値"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Indeterminate"

    def __bool__(self):
        return False


Indeterminate = _Indeterminate()
