class InconsistentPut {
    public static void main(String[] args) {
        java.util.Map<Integer, String> map = OurAPI.newMap()
            .put(1, "foo")
            .put("bar", 2) // expect-error
            .build();
        System.out.println(map);
    }
}
