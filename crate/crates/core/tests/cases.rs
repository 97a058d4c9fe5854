use bibd_core::constructions::{
    affine_plane, example_15, fano, pasch_trade, paste, projective_plane, transfer_check,
    BijectionRule, ConstructionError, PasteRecipe,
};
use bibd_core::subdesign::{minimal_subdesigns, wd_profile};
use bibd_core::wl::{
    automorphism_transfer, classify_gip_case, steiner3_split, wl2_refine, GipCase, IncidenceGraph,
    SeedRule, WlError,
};

#[test]
fn pasch_trade_breaks_well_distribution() {
    let d = pasch_trade(&example_15()).unwrap();
    let GipCase::B {
        block_colours,
        colour_count,
    } = classify_gip_case(&d)
    else {
        panic!("expected case b");
    };
    assert_eq!(colour_count, 2);
    let subs = minimal_subdesigns(&d);
    for (b, &c) in block_colours.iter().enumerate() {
        assert_eq!(c, subs.iter().filter(|s| s.contains_block(b)).count());
    }
    let (wd, _) = wd_profile(&d).unwrap();
    assert!(!wd.well_distributed);
    assert_eq!(
        automorphism_transfer(&(0..15).collect::<Vec<_>>(), &d, &subs),
        Err(WlError::NotWellDistributed)
    );
}

#[test]
fn single_cover_paste_partitions_blocks() {
    for rule in [
        BijectionRule::SortedOrder,
        BijectionRule::SeededShuffle(1),
        BijectionRule::SeededShuffle(2),
    ] {
        let recipe = PasteRecipe::new(affine_plane(7).unwrap(), fano(), rule).unwrap();
        let d = paste(&recipe).unwrap();
        let t = transfer_check(&d, &recipe);
        assert!(
            t.minimal_are_copies && t.well_distributed,
            "{rule:?}: {t:?}"
        );
        let GipCase::C { partition } = classify_gip_case(&d) else {
            panic!("{rule:?}: expected case c");
        };
        assert_eq!(partition.len(), 56);
        let mut seen = vec![0; d.b()];
        partition.iter().flatten().for_each(|&b| seen[b] += 1);
        assert!(seen.iter().all(|&c| c == 1));
        let subs = minimal_subdesigns(&d);
        assert_eq!(
            automorphism_transfer(&(0..49).collect::<Vec<_>>(), &d, &subs),
            Err(WlError::SingleCover { m: 1 })
        );
        if rule == BijectionRule::SortedOrder {
            let s = steiner3_split(&d, SeedRule::Lexicographic).unwrap();
            assert!(s.individualized.len() <= s.budget && s.discrete_on_v);
        }
    }
}

#[test]
fn plane_generators() {
    let d = affine_plane(7).unwrap();
    assert_eq!((d.v(), d.k(), d.b()), (49, 7, 56));
    assert_eq!(
        projective_plane(4).unwrap_err(),
        ConstructionError::NotPrime { q: 4 }
    );
    assert!(matches!(
        PasteRecipe::new(affine_plane(5).unwrap(), fano(), BijectionRule::SortedOrder),
        Err(ConstructionError::SizeMismatch {
            outer_k: 5,
            inner_v: 7
        })
    ));
}

#[test]
fn refinement_cap() {
    let d = projective_plane(37).unwrap();
    let g = IncidenceGraph::new(&d);
    assert_eq!(
        wl2_refine(&g, None).unwrap_err(),
        WlError::TooLarge {
            nodes: 2 * 1407
        }
    );
}
