//! Concrete actions at variety points satisfy every Adem relation, and
//! actions away from the variety do not.

use a2var::pipeline::verify_adem;
use a2var::{reduction, Case, Exec, Point, Variety};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 200;

#[test]
fn sampled_points_satisfy_adem() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in Case::ALL {
        let red = reduction(case).unwrap();
        let points = Variety::of(red).points(Exec::default());
        let sample: Vec<Point> = (0..SAMPLES)
            .map(|_| points.choose(&mut rng).unwrap().clone())
            .collect();
        let ok = Exec::default().map(&sample, |p| {
            verify_adem(&red.numeric_family(&p.0).unwrap()).unwrap()
        });
        assert!(ok.into_iter().all(|x| x), "{case}");
    }
}

#[test]
fn every_symmetric_point_satisfies_adem() {
    let red = reduction(Case::Symmetric).unwrap();
    let points = Variety::of(red).points(Exec::default());
    assert_eq!(points.len(), 256);
    let ok = Exec::default().map(&points, |p| {
        verify_adem(&red.numeric_family(&p.0).unwrap()).unwrap()
    });
    assert!(ok.into_iter().all(|x| x));
}

#[test]
fn random_assignments_off_the_variety_fail_adem() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xade7);
    for case in Case::ALL {
        let red = reduction(case).unwrap();
        let n = red.table.len();
        let mut sample = Vec::with_capacity(SAMPLES);
        while sample.len() < SAMPLES {
            let values: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            let free: Vec<bool> = red.free.iter().map(|v| values[v.index()]).collect();
            let on =
                red.on_variety(&free).unwrap() && red.full_assignment(&free).unwrap() == values;
            if !on {
                sample.push(values);
            }
        }
        let ok = Exec::default().map(&sample, |values| {
            !verify_adem(&red.generic.numeric_family(values).unwrap()).unwrap()
        });
        assert!(ok.into_iter().all(|x| x), "{case}");
    }
}

#[test]
fn every_non_point_fails_adem() {
    for case in [Case::Symmetric, Case::General] {
        let red = reduction(case).unwrap();
        let k = red.free.len();
        let non_points: Vec<Vec<bool>> = (0..1u32 << k)
            .map(|m| (0..k).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
            .filter(|free| !red.on_variety(free).unwrap())
            .collect();
        assert_eq!(
            non_points.len(),
            (1 << k) - Variety::of(red).points(Exec::default()).len()
        );
        let ok = Exec::default().map(&non_points, |free| {
            !verify_adem(&red.numeric_family(free).unwrap()).unwrap()
        });
        assert!(ok.into_iter().all(|x| x), "{case}");
    }
}
