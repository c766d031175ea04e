import java.util.HashMap;
import java.util.Map;

class BuildMapVisitor<K, V> extends Visitor<K, V> {
    Map<K, V> map = new HashMap<K, V>();

    @Override
    void visitMethod_put(Method_put<K, V> node) {
        map.put(node.key, node.value);
    }

    @Override
    void visitObject_Map(Object_Map<K, V> node) {
        visitChildren(node); // visit child nodes
    }

    @Override
    void visitMethod_newMap(Method_newMap node) {
        // Do nothing
    }

    @Override
    void visitMethod_build(Method_build node) {
        // Do nothing
    }
}
