use mobgo::domain::Design;
use mobgo::gp::{train, Hyperparams, TrainConfig};
use mobgo::numerics::linalg::{cholesky_factor, Matrix};
use mobgo::numerics::RngStream;
use mobgo::scalar::Scalar;

fn main() {
    let true_hp = Hyperparams::new(1.0, vec![0.3], 0.1).unwrap();
    let n = 80;
    let cfg = TrainConfig {
        restarts: 5,
        ..TrainConfig::default()
    };
    for rep in 0..20u64 {
        let stream = RngStream::new(100 + rep, 0);
        let mut rng = stream.rng();
        let x: Vec<Design<f64>> = (0..n)
            .map(|_| Design(vec![f64::unit_uniform(&mut rng)]))
            .collect();
        let k = Matrix::from_fn(n, n, |i, j| {
            mobgo::gp::matern32(&x[i], &x[j], &true_hp).unwrap() + if i == j { 1e-10 } else { 0.0 }
        });
        let chol = cholesky_factor(&k).unwrap();
        let z: Vec<f64> = (0..n).map(|_| f64::std_normal(&mut rng)).collect();
        let y: Vec<f64> = (0..n)
            .map(|i| {
                (0..=i).map(|j| chol.lower[(i, j)] * z[j]).sum::<f64>()
                    + 0.1 * f64::std_normal(&mut rng)
            })
            .collect();
        let t0 = std::time::Instant::now();
        let m = train(&x, &y, &cfg, RngStream::new(7, rep), None).unwrap();
        println!(
            "rep {rep}: {:?}  l={:.4} s={:.4} nu={:.4}",
            t0.elapsed(),
            m.hyperparams().lengthscales[0],
            m.hyperparams().signal,
            m.hyperparams().noise_std
        );
    }
}
