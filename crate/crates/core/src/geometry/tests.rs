use super::*;
use crate::exactmath::rational::{int, ratio};
use rand::{Rng, SeedableRng};

fn pts(v: &[(i64, i64)]) -> OrderedPointSet {
    OrderedPointSet::new(2, v.iter().map(|&(x, y)| vec![int(x), int(y)]).collect()).unwrap()
}

fn h(a: &[i64], b: i64) -> Hyperplane {
    Hyperplane::new(a.iter().map(|&x| int(x)).collect(), int(b)).unwrap()
}

fn arr(hs: Vec<Hyperplane>) -> Arrangement {
    Arrangement::new(hs[0].dim(), hs).unwrap()
}

fn random_arrangement(rng: &mut impl Rng, d: usize, n: usize) -> Arrangement {
    loop {
        let hs = (0..n)
            .map(|_| {
                let a = (0..d)
                    .map(|_| ratio(rng.random_range(-9..=9), rng.random_range(1..=4)))
                    .collect();
                Hyperplane::new(a, int(rng.random_range(-9..=9)))
                    .unwrap_or_else(|_| h(&vec![1; d], 1))
            })
            .collect();
        let a = arr(hs);
        if general_position_hyperplanes(&a).holds() {
            return a;
        }
    }
}

#[test]
fn orientation_examples() {
    let o = |v: &[(i64, i64)]| {
        let p = pts(v);
        orientation(&p.points().iter().map(|x| x.as_slice()).collect::<Vec<_>>()).unwrap()
    };
    assert_eq!(o(&[(0, 0), (1, 0), (0, 1)]), 1);
    assert_eq!(o(&[(0, 0), (0, 1), (1, 0)]), -1);
    assert_eq!(o(&[(0, 0), (1, 1), (2, 2)]), 0);
}

#[test]
fn order_type_relation_examples() {
    let rel = order_type_relation(2).unwrap();
    assert_eq!(rel.max_degree(), 2);
    let p = pts(&[(0, 0), (1, 0), (0, 1)]);
    assert!(eval_membership(&rel, &p, &[0, 1, 2]).unwrap());
    let r1 = order_type_relation(1).unwrap();
    let line = OrderedPointSet::from_scalars([int(-3), ratio(1, 2), int(7), int(0)]);
    assert!(eval_membership(&r1, &line, &[0, 1]).unwrap());
    assert!(!eval_membership(&r1, &line, &[2, 3]).unwrap());
}

use crate::relation::eval_membership;

#[test]
fn general_position_point_examples() {
    assert!(general_position_points(&pts(&[(0, 0), (1, 0), (0, 1), (1, 2)])).holds());
    assert_eq!(
        general_position_points(&pts(&[(5, 1), (0, 0), (1, 1), (2, 2)])),
        GeneralPosition::Singular(vec![1, 2, 3])
    );
    assert!(
        general_position_points(&OrderedPointSet::from_scalars([int(1), int(4), int(-2)])).holds()
    );
}

#[test]
fn intersection_examples() {
    assert_eq!(
        hyperplane_intersection(&[&h(&[1, 0], 0), &h(&[0, 1], 1)]).unwrap(),
        vec![int(0), int(1)]
    );
    assert_eq!(
        hyperplane_intersection(&[&h(&[-1, 1], 1), &h(&[1, 1], 3)]).unwrap(),
        vec![int(1), int(2)]
    );
    assert!(matches!(
        hyperplane_intersection(&[&h(&[0, 1], 0), &h(&[0, 1], 1)]),
        Err(Error::Degenerate(_))
    ));
    let frac = Hyperplane::new(vec![ratio(1, 3), ratio(2, 5)], ratio(-1, 7)).unwrap();
    let v = hyperplane_intersection(&[&frac, &h(&[3, -1], 2)]).unwrap();
    assert!(frac.residual(&v).is_zero() && h(&[3, -1], 2).residual(&v).is_zero());
}

#[test]
fn general_position_hyperplane_examples() {
    let good = arr(vec![h(&[-1, 1], 1), h(&[1, 1], 3), h(&[0, 1], 1)]);
    assert!(general_position_hyperplanes(&good).holds());
    let concurrent = arr(vec![h(&[1, 0], 0), h(&[0, 1], 0), h(&[1, 1], 0)]);
    assert!(matches!(
        general_position_hyperplanes(&concurrent),
        GeneralPosition::Coincident(..)
    ));
    let parallel = arr(vec![h(&[0, 1], 0), h(&[0, 1], 1), h(&[1, 1], 0)]);
    assert_eq!(
        general_position_hyperplanes(&parallel),
        GeneralPosition::Singular(vec![0, 1])
    );
}

#[test]
fn one_sided_relation_examples() {
    let rel = one_sided_relation(2).unwrap();
    let m = |a: &Hyperplane, b: &Hyperplane| {
        one_sided_membership(&rel, &[&a.representation(), &b.representation()]).unwrap()
    };
    assert_eq!(
        m(&h(&[-1, 1], 1), &h(&[1, 1], 3)),
        OneSidedMembership {
            member: true,
            degenerate: false
        }
    );
    assert_eq!(
        m(&h(&[-1, 1], 1), &h(&[1, 1], -3)),
        OneSidedMembership {
            member: false,
            degenerate: false
        }
    );
    // vertex (1, 0)
    assert_eq!(
        m(&h(&[1, 0], 1), &h(&[1, 1], 1)),
        OneSidedMembership {
            member: false,
            degenerate: true
        }
    );
    assert!(m(&h(&[0, 1], 1), &h(&[0, 2], 1)).degenerate);
}

#[test]
fn one_sided_examples() {
    assert!(is_one_sided(&arr(vec![h(&[-1, 1], 1), h(&[1, 1], 3), h(&[0, 1], 1)])).unwrap());
    // vertices (1,2), (-2,-1), (0,1)
    let mixed = arr(vec![h(&[-1, 1], 1), h(&[1, 1], 3), h(&[1, 1], -3)]);
    assert!(matches!(is_one_sided(&mixed), Err(Error::Precondition(_))));
    let mixed = arr(vec![h(&[-1, 1], 1), h(&[1, 1], 3), h(&[2, 1], -5)]);
    assert!(!is_one_sided(&mixed).unwrap());
    assert!(is_one_sided(&arr(vec![h(&[-1, 1], 1), h(&[1, 1], 3)])).unwrap());
}

#[test]
fn one_sided_relation_matches_vertices() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for d in [2, 3] {
        let rel = one_sided_relation(d).unwrap();
        for _ in 0..5 {
            let a = random_arrangement(&mut rng, d, d + 3);
            let reps = a.representation();
            for_each_combination(a.len(), d, |c| {
                let hs: Vec<&Hyperplane> = c.iter().map(|&i| &a.hyperplanes()[i]).collect();
                let v = hyperplane_intersection(&hs).unwrap();
                let got = eval_membership(&rel, &reps, c).unwrap();
                assert_eq!(got, v[d - 1] > Rational::zero());
                true
            });
        }
    }
}

#[test]
fn projection_examples() {
    let a = arr(vec![h(&[0, 0, 1], 0), h(&[1, 1, 1], 1)]);
    let p = project_onto_hyperplane(&a, 0).unwrap();
    assert!(p.arrangement.hyperplanes()[0].same_as(&h(&[1, 1], 1)));
    assert_eq!(p.dropped_axis, 2);
    assert_eq!(p.reference, None);

    let a = arr(vec![h(&[1, 1, 1], 3), h(&[0, 0, 1], 1)]);
    let p = project_onto_hyperplane(&a, 0).unwrap();
    assert!(p.arrangement.hyperplanes()[0].same_as(&h(&[1, 1], 2)));
    assert_eq!(p.dropped_axis, 2);

    let a = arr(vec![h(&[0, 0, 1], 0), h(&[0, 0, 2], 5)]);
    assert!(matches!(
        project_onto_hyperplane(&a, 0),
        Err(Error::Degenerate(_))
    ));
}

#[test]
fn projection_preserves_one_sidedness() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..6 {
        let a = random_arrangement(&mut rng, 3, 6);
        for pivot in [0, 5] {
            let proj = project_onto_hyperplane(&a, pivot).unwrap();
            for_each_combination(proj.members.len(), 3, |sub| {
                let chart = proj.arrangement.select(sub);
                let originals: Vec<usize> = sub.iter().map(|&i| proj.members[i]).collect();
                // vertices in R^3 of the pivot with each pair of chosen members
                let mut signs = Vec::new();
                for_each_combination(originals.len(), 2, |pair| {
                    let hs = [
                        &a.hyperplanes()[pivot],
                        &a.hyperplanes()[originals[pair[0]]],
                        &a.hyperplanes()[originals[pair[1]]],
                    ];
                    let v = hyperplane_intersection(&hs).unwrap();
                    let cv = hyperplane_intersection(&[
                        &chart.hyperplanes()[pair[0]],
                        &chart.hyperplanes()[pair[1]],
                    ])
                    .unwrap();
                    assert_eq!(lift_from_chart(&a, pivot, &proj, &cv), v);
                    assert_eq!(proj.reference.as_ref().unwrap().residual(&cv), v[2]);
                    signs.push(sign(&v[2]));
                    true
                });
                let direct = signs.iter().all(|&s| s == 1) || signs.iter().all(|&s| s == -1);
                assert_eq!(
                    is_one_sided_wrt(&chart, proj.reference.as_ref().unwrap()).unwrap(),
                    direct
                );
                true
            });
        }
    }
}

#[test]
fn convex_position_examples() {
    assert!(is_convex_position(&pts(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap());
    assert!(!is_convex_position(&pts(&[(0, 0), (4, 0), (0, 4), (1, 1)])).unwrap());
    assert!(matches!(
        is_convex_position(&pts(&[(0, 0), (1, 1), (2, 2)])),
        Err(Error::Precondition(_))
    ));
}
