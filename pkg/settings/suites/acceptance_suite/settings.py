# 受け入れ基準の規模で実行するスイート
# 各チェック 200 インスタンス、n = 2..4。ソルバーを使うチェックは時間がかかる。
SEED = 20240611

DIMENSIONS = [2, 3, 4]

ARITHMETIC_MODE = "exact"

VERTEX_COUNT_RANGE = (4, 12)

INSTANCE_COUNTS = {
    "brunn_minkowski": 200,
    "kneser_suss": 200,
    "diskant_bound": 200,
    "morse": 200,
    "reverse_kt": 200,
    # 正定値行列の三つ組は 500 組（n = 2..5）
    "mixed_discriminant_kt": 500,
    "loomis_whitney": 200,
    "box_bound": 200,
    "mixed_body_volume": 200,
    "improved_bm": 200,
    "log_concavity": 200,
    "mixed_volume_linearity": 200,
    "oracle_equivalence": 200,
    # 各次元 100 体（n = 2, 3 に限る）
    "solver_round_trip": 200,
    "alexandrov_decomposition": 100,
    "polar_volume": 100,
    "derivative_lemma": 100,
    "flop_volume": 35,
}

SOLVER_TOLERANCE = 1e-8
SOLVER_MAX_ITERATIONS = 200
SOLVER_DAMPING = 1.0

# 独立なインスタンスを並列に評価する
WORKERS = 4

OUTPUT_DIR = None
