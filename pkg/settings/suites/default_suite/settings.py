# 乱数シード（.env の SUITE_SEED でオーバーライド可能）
# 同じシードと設定なら、生成されるインスタンスと結果は完全に一致する。
SEED = 20240611

# 対象次元（2〜4）
# インスタンス番号 i の次元は DIMENSIONS[i % len(DIMENSIONS)]。
# 対象次元が限られるチェック（log_concavity は 3, 4 のみなど）はその中で巡回する。
DIMENSIONS = [2, 3]

# 演算モード（"exact" または "float"、.env の DEFAULT_ARITHMETIC_MODE でオーバーライド可能）
# "exact" はランダムな頂点を分母 2^16 の有理数に丸め、体積や混合体積を厳密に計算する。
ARITHMETIC_MODE = "exact"

# ランダム多面体の点の数（min, max）
# 単位球から一様に点を取り、その凸包を使う。min は 3 以上。
VERTEX_COUNT_RANGE = (4, 12)

# チェック名 -> インスタンス数
# 載っていないチェックは実行しない。0 を指定しても同じ。
INSTANCE_COUNTS = {
    "brunn_minkowski": 50,
    "kneser_suss": 50,
    "diskant_bound": 50,
    "morse": 50,
    "reverse_kt": 50,
    "mixed_discriminant_kt": 50,
    "loomis_whitney": 50,
    "box_bound": 50,
    "mixed_body_volume": 50,
    "improved_bm": 50,
    "log_concavity": 50,
    "mixed_volume_linearity": 50,
    "minkowski_first": 50,
    "alexandrov_fenchel": 50,
    "blaschke_compatibility": 50,
    "indecomposability": 50,
    "oracle_equivalence": 50,
    "solver_round_trip": 50,
    "alexandrov_decomposition": 50,
    "polar_volume": 50,
    "derivative_lemma": 50,
    "flop_volume": 50,
    "volume_correspondence": 50,
}

# -----ソルバー設定（.env の SOLVER_* でオーバーライド可能）-----
# 面積の相対誤差目標
SOLVER_TOLERANCE = 1e-8

# 最大ニュートン反復回数
SOLVER_MAX_ITERATIONS = 200

# 直線探索の初期ステップ（0 < x <= 1）
SOLVER_DAMPING = 1.0

# スレッドプールのワーカー数（.env の SUITE_WORKERS でオーバーライド可能）
# 結果はワーカー数によらない。
WORKERS = 1

# 結果の出力先（None なら results/<スイート名>）
OUTPUT_DIR = None
