class Evaluator {
    static <K, V> java.util.Map<K, V> buildMap(Object_Map<K, V> node) {
        BuildMapVisitor<K, V> visitor = new BuildMapVisitor<K, V>();
        visitor.visit(node);
        return visitor.map;
    }
}
