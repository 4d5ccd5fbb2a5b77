"""Cross-check the permanent path against a direct multinomial expansion."""

from permnet import haar_random_unitary, oracle_transform, transform_state

worst = 0.0
for seed in range(20):
    u = haar_random_unitary(3, seed)
    for inp in [(1, 1, 1), (3, 0, 2), (0, 4, 1), (2, 2, 1)]:
        diff = transform_state(u, inp).max_abs_diff(oracle_transform(u, inp))
        worst = max(worst, diff)
print(f"largest amplitude difference over 80 transforms: {worst:.2e}")
