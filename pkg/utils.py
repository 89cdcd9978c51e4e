import os
import sys
import json
import datetime

from config import LOG_DIR, ERROR_LOG_FILE, OUTPUT_DIR


def ensure_output_dir():
    """出力ディレクトリが存在することを確認し、なければ作成"""
    os.makedirs(OUTPUT_DIR, exist_ok=True)
    return OUTPUT_DIR


def get_output_path(filename):
    """出力ファイルの完全パスを生成"""
    ensure_output_dir()
    return os.path.join(OUTPUT_DIR, filename)


def log_error(context, message):
    """エラーログを記録

    Args:
        context (str): エラーが起きた処理（サブコマンド名や入力ファイル）
        message (str): エラー内容
    """
    os.makedirs(LOG_DIR, exist_ok=True)
    timestamp = datetime.datetime.now().strftime("%Y-%m-%d %H:%M:%S")
    log_entry = f"[{timestamp}] {context} - {message}\n"

    with open(ERROR_LOG_FILE, "a", encoding="utf-8") as file:
        file.write(log_entry)

    # --json の標準出力を汚さないように stderr へ
    print(f"⚠️ エラー記録: {message}", file=sys.stderr)


def save_json(data, file_path):
    """JSONファイルとして保存"""
    directory = os.path.dirname(file_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(file_path, "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=2)
    return file_path


def load_json(file_path):
    """JSONファイルを読み込む"""
    with open(file_path, "r", encoding="utf-8") as f:
        return json.load(f)
