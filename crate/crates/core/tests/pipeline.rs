use std::fs;

use horseshoe::cutpoint::{simulate, two_party_legislature, Legislature};
use horseshoe::pipeline::{
    analyze, compare_files, emit, filter_participation, kendall_tau_b, order_embedding,
    order_legislators, parse_rollcall, save_rollcall, Group, RollCallDataset, EMBEDDING_FILE,
    ORDER_FILE, SCATTER_FILE, SVG_FILE,
};
use horseshoe::theory::twin_theory;

fn single_population(n: usize, m: usize, seed: u64) -> (Legislature, RollCallDataset) {
    let leg = Legislature::equally_spaced(n).unwrap();
    let votes = simulate(&leg, m, seed).unwrap();
    let data = RollCallDataset::from_simulation(&leg, votes).unwrap();
    (leg, data)
}

#[test]
fn single_population_traces_a_horseshoe() {
    let (leg, data) = single_population(100, 5000, 4);
    let r = analyze(&data, true).unwrap();
    let f1 = r.embedding.eigenvector(0);
    let f2 = r.embedding.eigenvector(1);
    let tau = kendall_tau_b(&f1, leg.positions()).unwrap();
    assert!(tau.abs() >= 0.95, "{tau}");

    // f2 has one sign at both ends and the other in the middle.
    let n = f1.len();
    let ends = f2[..10].iter().chain(&f2[n - 10..]).sum::<f64>();
    let middle = f2[40..60].iter().sum::<f64>();
    assert!(ends * middle < 0.0);
    let signs: Vec<bool> = f2.iter().map(|&x| (x > 0.0) == (ends > 0.0)).collect();
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    assert!(changes <= 4, "{changes} sign changes");
}

#[test]
fn twin_theory_order_follows_the_sine() {
    let n = 50;
    let [split, left, right] = twin_theory(n).unwrap();
    let o = order_legislators(&split.samples, &left.samples, &right.samples).unwrap();
    assert!(o.groups[..n].iter().all(|&g| g == Group::G1));
    assert!(o.groups[n..].iter().all(|&g| g == Group::G2));

    let g = &left.samples[..n];
    let mut by_g: Vec<usize> = (0..n).collect();
    by_g.sort_by(|&a, &b| g[a].total_cmp(&g[b]).then(a.cmp(&b)));
    assert_eq!(&o.order[..n], by_g.as_slice());
    let shifted: Vec<usize> = by_g.iter().map(|i| i + n).collect();
    assert_eq!(&o.order[n..], shifted.as_slice());

    // Exact index order on the range where the sine is monotone.
    let lo = n / 10;
    let hi = n - n / 10;
    let core: Vec<usize> = o.order[..n].iter().copied().filter(|i| (lo..hi).contains(i)).collect();
    assert!(core.windows(2).all(|w| w[0] < w[1]) || core.windows(2).all(|w| w[0] > w[1]));
}

#[test]
fn ordering_survives_sign_flips() {
    let leg = two_party_legislature(30, 0.5).unwrap();
    let data = RollCallDataset::from_simulation(&leg, simulate(&leg, 2000, 6).unwrap()).unwrap();
    let r = analyze(&data, false).unwrap();
    let g1 = r.groups.iter().filter(|&&g| g == Group::G1).count();
    for mask in 1u8..8 {
        let flip = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
        let o = order_embedding(&r.embedding.with_flipped_axes(&flip)).unwrap();
        assert_eq!(o.groups, r.groups);
        for (a, b) in [(0, g1), (g1, r.order.len())] {
            let mut rev = o.order[a..b].to_vec();
            rev.reverse();
            assert!(o.order[a..b] == r.order[a..b] || rev == r.order[a..b], "mask {mask}");
        }
    }
}

#[test]
fn end_to_end_files_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let (_, data) = single_population(40, 800, 12);
    let input = dir.path().join("votes.csv");
    save_rollcall(&data, &input).unwrap();
    let parsed = filter_participation(&parse_rollcall(&input).unwrap(), 0.9).unwrap();
    assert_eq!(parsed, data);

    let r = analyze(&parsed, true).unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let files = emit(&r, &a, true).unwrap();
    emit(&analyze(&parsed, true).unwrap(), &b, true).unwrap();
    assert_eq!(files.len(), 5);
    for f in &files {
        let name = f.file_name().unwrap();
        assert_eq!(fs::read(f).unwrap(), fs::read(b.join(name)).unwrap(), "{name:?}");
    }

    let embedding = fs::read_to_string(a.join(EMBEDDING_FILE)).unwrap();
    assert_eq!(embedding.lines().count(), 41);
    let scatter = fs::read_to_string(a.join(SCATTER_FILE)).unwrap();
    assert_eq!(scatter.lines().next().unwrap(), "id,party,c1,c2,c3");
    assert!(fs::read_to_string(a.join(SVG_FILE)).unwrap().starts_with("<svg"));

    // Scores equal to the emitted rank correlate perfectly.
    let order = fs::read_to_string(a.join(ORDER_FILE)).unwrap();
    let mut scores = String::from("legislator_id,score\n");
    for line in order.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        scores.push_str(&format!("{},{}\n", f[1], f[0]));
    }
    let scores_path = dir.path().join("scores.csv");
    fs::write(&scores_path, scores).unwrap();
    let c = compare_files(&a.join(ORDER_FILE), &scores_path).unwrap();
    assert_eq!((c.spearman, c.kendall, c.joined), (1.0, 1.0, 40));
}

#[test]
fn too_few_legislators() {
    let (_, data) = single_population(3, 50, 1);
    assert!(analyze(&data, true).is_err());
}
