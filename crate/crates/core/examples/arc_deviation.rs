//! Print the sampled maximum of |F_k(j) e^{-2 pi k Im} - 2 cos(2 pi k Re)|
//! on the arc for a range of k. The k = 1 maximum sits at the corner
//! j = 0 and equals 744 e^{-pi sqrt(3)} - 2 = 1.22406...; from k = 2 on
//! the profile drops to 1.000... .

use arczeros::extremal::ExtremalFunction;
use arczeros::modforms::ArcPoint;
use arczeros::partitions::CoeffStream;
use num::BigRational;

fn main() {
    let grid = ArcPoint::grid(8193);
    println!("{:>3}  {:>12}  {:>10}", "k", "max_dev", "theta");
    for k in 1..=12usize {
        let stream = CoeffStream::explicit(vec![BigRational::from_integer(0.into()); k]);
        let f = ExtremalFunction::construct(&stream, k).unwrap();
        let residuals = f.residual_on_arc(&grid, 40, 1e-9).unwrap();
        let (at, max) =
            residuals.iter().enumerate().fold(
                (0, 0.0f64),
                |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
            );
        println!("{k:>3}  {max:>12.8}  {:>10.6}", grid[at].theta());
    }
}
