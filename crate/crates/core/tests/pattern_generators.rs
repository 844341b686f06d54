mod common;

use tilesynth::pattern::{binary_counter, random, sierpinski, ColorGrid};
use tilesynth::sim::{simulate, verify_solution, SimulationResult};

/// Pascal's triangle mod 2, built row by row with no reference to the
/// generator: cell (x, y) is C(x+y-2, x-1) mod 2.
fn pascal_mod2(m: usize, n: usize) -> Vec<Vec<u32>> {
    let rows = m + n - 1;
    let mut tri: Vec<Vec<u32>> = vec![vec![1]];
    for r in 1..rows {
        let prev = &tri[r - 1];
        let mut row = vec![1; r + 1];
        for i in 1..r {
            row[i] = (prev[i - 1] + prev[i]) % 2;
        }
        tri.push(row);
    }
    (1..=n)
        .map(|y| (1..=m).map(|x| tri[x + y - 2][x - 1]).collect())
        .collect()
}

#[test]
fn sierpinski_matches_binomials_mod_2() {
    for m in 2..=16 {
        for n in 2..=16 {
            let g = sierpinski(m, n).unwrap();
            assert_eq!(g.num_colours(), 2);
            let want = pascal_mod2(m, n);
            for y in 1..=n {
                for x in 1..=m {
                    assert_eq!(g.color(x, y), want[y - 1][x - 1], "{m}x{n} at ({x},{y})");
                }
            }
        }
    }
}

#[test]
fn degenerate_sierpinski_is_single_coloured() {
    for len in 1..=5 {
        for g in [sierpinski(1, len).unwrap(), sierpinski(len, 1).unwrap()] {
            assert_eq!(g.num_colours(), 1);
            assert!(g.cells().iter().all(|&c| c == 0));
        }
    }
}

#[test]
fn counter_matches_four_tile_assembly() {
    for m in 2..=8 {
        for n in 2..=16 {
            let g = binary_counter(m, n).unwrap();
            let sys = common::counter_system(m, n);
            let SimulationResult::UniqueTerminal(asm) = simulate(&sys) else {
                panic!("counter tiles do not assemble {m}x{n}");
            };
            for y in 1..=n {
                for x in 1..=m {
                    let tile = asm.tile_at(x, y).unwrap();
                    assert_eq!(sys.tiles[tile].color, g.color(x, y), "{m}x{n} at ({x},{y})");
                }
            }
            assert!(verify_solution(&sys, &g).is_pass());
        }
    }
}

#[test]
fn sierpinski_matches_four_tile_assembly() {
    for m in 2..=12 {
        for n in 2..=12 {
            let g = sierpinski(m, n).unwrap();
            assert!(
                verify_solution(&common::sierpinski_system(m, n), &g).is_pass(),
                "{m}x{n}"
            );
        }
    }
}

#[test]
fn random_round_trips_through_text() {
    for seed in 0..50 {
        for (m, n, k) in [(1, 1, 1), (3, 2, 2), (5, 4, 3), (8, 8, 4)] {
            let g = random(m, n, k, seed).unwrap();
            assert_eq!(g.num_colours(), k);
            assert_eq!(ColorGrid::parse(&g.emit()).unwrap(), g);
            assert_eq!(g.color_partition().num_parts(), k);
        }
    }
}

#[test]
fn random_colours_are_balanced() {
    let (mut ones, mut total) = (0usize, 0usize);
    for seed in 0..1000 {
        let g = random(4, 4, 2, seed).unwrap();
        ones += g.cells().iter().filter(|&&c| c == 1).count();
        total += g.num_cells();
    }
    let frac = ones as f64 / total as f64;
    assert!(
        (0.45..=0.55).contains(&frac),
        "fraction of colour 1 is {frac}"
    );
}

#[test]
fn random_is_reproducible() {
    assert_eq!(random(6, 5, 3, 99).unwrap(), random(6, 5, 3, 99).unwrap());
    assert_ne!(random(6, 5, 3, 99).unwrap(), random(6, 5, 3, 100).unwrap());
}
