from dotenv import load_dotenv
import os

# .env ファイルを読み込む
load_dotenv()

# Weyl群列挙の上限（コマンドラインの --cap で個別に上書き可能）
WEYL_CAP = int(os.getenv("ROOTDATUM_WEYL_CAP", "2000000"))

# 有限位数判定で冪を取る上限
ORDER_BOUND = 240

# 長さ関数の転倒数チェックに使うサンプル数
LENGTH_SAMPLE = 64

# 非半単純ルートデータの同型探索（整数解格子上の探索半径と候補数の上限）
ISO_SEARCH_RADIUS = 2
ISO_SEARCH_LIMIT = 100000

# JSONで整数のまま書き出せる絶対値の上限
JSON_SAFE_INT = 2**53

# numpy の int64 で途中結果が溢れないとみなす絶対値の上限（超えると Python の int で計算）
INT64_SAFE = 2**62


def root_budget(base_size):
    """ルート生成の安全上限（退化した入力の検出用）"""
    return 10 * base_size * base_size + 16


# ディレクトリ設定
OUTPUT_DIR = "data/output/"

# ログファイル
LOG_DIR = "logs/"
ERROR_LOG_FILE = f"{LOG_DIR}/error.log"
