class UseOurAPI {
    public static void main(String[] args) {
        java.util.Map<Integer, String> map = OurAPI.newMap()
            .put(1, "foo")
            .put(2, "bar")
            .build();
        if (map.size() != 2 || !"foo".equals(map.get(1)) || !"bar".equals(map.get(2))) {
            System.out.println("UNEXPECTED " + map);
            System.exit(1);
        }
        // Key and value types are inferred from the assignment target when
        // no entry is put.
        java.util.Map<Integer, String> empty = OurAPI.newMap().build();
        if (!empty.isEmpty()) {
            System.out.println("UNEXPECTED " + empty);
            System.exit(1);
        }
        System.out.println("OK 1=" + map.get(1) + " 2=" + map.get(2));
    }
}
