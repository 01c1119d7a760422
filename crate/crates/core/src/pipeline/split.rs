use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::PipelineError;

/// Seeded Fisher–Yates shuffle (ChaCha8) followed by a prefix split with
/// `round(ratio · n)` training items.
pub fn split_train_test<T: Clone>(
    records: &[T],
    ratio: f64,
    seed: u64,
) -> Result<(Vec<T>, Vec<T>), PipelineError> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(PipelineError::SplitError(format!("ratio {ratio} not in (0, 1)")));
    }
    let n = records.len();
    let n_train = (ratio * n as f64).round() as usize;
    if n_train == 0 || n_train >= n {
        return Err(PipelineError::SplitError(format!(
            "ratio {ratio} over {n} records leaves an empty side"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let pick = |idx: &[usize]| idx.iter().map(|&i| records[i].clone()).collect::<Vec<_>>();
    Ok((pick(&order[..n_train]), pick(&order[n_train..])))
}
