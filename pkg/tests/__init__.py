"""
テストモジュール
"""
