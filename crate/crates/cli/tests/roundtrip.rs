use reflexive_cli::commands::DEMOS;
use reflexive_cli::instance_file::{parse, same_document, to_text};
use reflexive_cli::load::{document_of, load};
use reflexive_core::catalog::{catalog_entries, default_diagram};

#[test]
fn catalog_objects_round_trip() {
    for e in catalog_entries() {
        let mods: Vec<_> = e.left.iter().chain(&e.right).map(|m| (m.name.clone(), m.module.clone(), m.flat)).collect();
        let diagram = default_diagram(&e.ring);
        let doc = document_of(&e.ring, &mods, Some(&diagram));
        let text = to_text(&doc);
        let back = parse(&text).unwrap_or_else(|err| panic!("{}: {err}\n{text}", e.ring.name()));
        assert!(same_document(&doc, &back), "{}", e.ring.name());
        assert_eq!(to_text(&back), text);

        let loaded = load(&back).unwrap();
        assert!(loaded.ring.same_structure(&e.ring));
        assert_eq!(loaded.ring.data().constants, e.ring.data().constants);
        for (name, m, _) in &mods {
            let got = loaded.modules.values().find(|x| x.side() == m.side() && x.relations() == m.relations() && x.gens() == m.gens());
            assert!(got.is_some(), "{} {name}", e.ring.name());
        }
        assert_eq!(loaded.diagram.algebras.len(), diagram.algebras.len());
        assert_eq!(loaded.diagram.maps.len(), diagram.maps.len());
        for ((a, b, f), (c, d, g)) in loaded.diagram.maps.iter().zip(&diagram.maps) {
            assert_eq!((a, b), (c, d));
            assert_eq!(f.matrix().row_vecs(), g.matrix().row_vecs());
        }
        for (x, y) in loaded.diagram.algebras.iter().zip(&diagram.algebras) {
            assert!(x.ring.same_structure(&y.ring));
            assert_eq!(x.structure_map.matrix().row_vecs(), y.structure_map.matrix().row_vecs());
        }
    }
}

#[test]
fn demos_round_trip_and_load() {
    for (name, text) in DEMOS {
        let doc = parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let again = parse(&to_text(&doc)).unwrap();
        assert!(same_document(&doc, &again), "{name}");
        assert!(!load(&doc).unwrap().jobs.is_empty(), "{name}");
    }
}
